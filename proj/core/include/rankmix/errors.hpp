#pragma once

#include <stdexcept>
#include <string>

namespace rankmix {

// Base for violations of an operation's contract (bad arguments, singular
// noise, infeasible programs). The CLI maps these to exit code 2.
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeMismatch : public ContractError {
 public:
  using ContractError::ContractError;
};

class InvalidArgument : public ContractError {
 public:
  using ContractError::ContractError;
};

// An exhaustive computation would exceed a configured cap
// (enumeration size, tabloid dimension, partition weight).
class CapExceeded : public ContractError {
 public:
  using ContractError::ContractError;
};

class Overflow : public ContractError {
 public:
  using ContractError::ContractError;
};

class SingularNoise : public ContractError {
 public:
  using ContractError::ContractError;
};

class InsufficientSamples : public ContractError {
 public:
  using ContractError::ContractError;
};

class Infeasible : public ContractError {
 public:
  using ContractError::ContractError;
};

class CandidateOverflow : public ContractError {
 public:
  using ContractError::ContractError;
};

class SupportOverflow : public ContractError {
 public:
  using ContractError::ContractError;
};

class NoiseUnidentifiable : public ContractError {
 public:
  using ContractError::ContractError;
};

// File and format problems. The CLI maps these to exit code 1.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rankmix
