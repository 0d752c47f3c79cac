#pragma once

#include <string>
#include <vector>

namespace rankmix::tools {

struct IdentityCheck {
  std::string suite;
  std::string identity;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass() const { return max_deviation <= tolerance; }
};

// Suites: partitions, characters, noise, tabloid, lowerbound, all.
std::vector<IdentityCheck> run_suite(const std::string& suite, int n);

std::vector<std::string> suite_names();

}  // namespace rankmix::tools
