#pragma once

// Command layer shared by the command-line tool and the Python module. Each
// command returns JSON records (one serialized object per line), a short
// human-readable summary and an exit code: 0 all pass, 1 any failure or
// mismatch, 2 inconclusive only.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gammagen/hq.hpp"

namespace gammagen {

struct CommandResult {
  std::vector<std::string> records;
  std::string summary;
  int exit_code = 0;
};

/// Certifies a generating set of Gamma0(N). Without explicit matrices the
/// tabulated set for N is used; untabulated N then fails.
CommandResult cmd_gens(long N, const std::vector<Mat2>& matrices = {}, std::size_t max_cosets = 2'000'000);
CommandResult cmd_gens_table(std::size_t max_cosets = 2'000'000);

CommandResult cmd_identities();

CommandResult cmd_verify_hq(const VerifyHqConfig& cfg);

struct TwistFeOptions {
  std::string coeffs_json;
  long modulus = 1;
  bool all_characters = false;
  /// Exponents of one character mod q; empty selects the trivial character.
  std::vector<long> character;
  /// Convolution oracle bound; 0 skips the oracle.
  long oracle_x = 0;
};
CommandResult cmd_twist_fe(const TwistFeOptions& opts);

/// Random coefficient data for `count` characters of modulus <= max_modulus.
CommandResult cmd_twist_fe_random(std::uint64_t seed, int count, long max_modulus, long oracle_x);

CommandResult cmd_ramanujan(long q, long n);
CommandResult cmd_orthogonality(long Q);

/// subsets_json is an h x h array of arrays of integers.
CommandResult cmd_keydet(long m, long n, const std::vector<long>& primes, const std::string& subsets_json);
CommandResult cmd_keydet_random(std::uint64_t seed, int count, int max_h, long max_q, long max_m);

CommandResult cmd_decompose(long N, const std::string& matrix_text);

struct WordsOptions {
  long N = 1;
  std::int64_t height = 1;
  /// Strict bound: height < `height`.
  bool below = false;
  bool count_only = false;
  /// Required for N <= 3.
  int max_length = 14;
};
CommandResult cmd_words(const WordsOptions& opts);

/// Renders records as aligned text columns.
std::string render_table(const std::vector<std::string>& records);

}  // namespace gammagen
