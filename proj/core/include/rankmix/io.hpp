#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankmix/distribution.hpp"
#include "rankmix/noise.hpp"
#include "rankmix/tabloid.hpp"

namespace rankmix {

// Whole-file helpers; failures raise IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

// {"n": 5, "epsilon": 0.2, "atoms": [{"perm": "2,1,3,4,5", "w": 1.0}]}
// "epsilon" is optional and "perm" may also be an array. Unknown keys and
// malformed documents raise IoError; semantic violations raise the
// constructor's ContractError.
SparseRankingMixture mixture_from_json(std::string_view text);
std::string mixture_to_json(const SparseRankingMixture& f);

// {"model": "heat", "n": 6, "t": 2.0}, {"model": "mallows", "n": 6, "theta": 0.5},
// {"model": "symmetric", "n": 6, "pbar": [p_0, ..., p_n]}
NoiseModel noise_from_json(std::string_view text);
std::string noise_to_json(const NoiseModel& model);

// One permutation per line in 1-based comma form; blank lines are skipped.
// expected_n = 0 accepts the size of the first line.
std::vector<Permutation> read_samples(std::istream& in, int expected_n = 0);
void write_samples(std::ostream& out, std::span<const Permutation> samples);

// RFC 4180: quote fields containing a comma, quote, CR or LF.
std::string csv_field(std::string_view text);
std::string csv_row(std::span<const std::string> fields);

std::string tuple_to_string(std::span<const int> tuple);

// Header row "ibar" followed by the column tuples, then one row per row
// tuple; tuples in indexer order.
void write_marginal_csv(std::ostream& out, const MarginalMatrix& m);

}  // namespace rankmix
