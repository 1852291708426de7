#pragma once

// Verification that the subgroup H_q generated by the Gamma0(N) elements
// with upper-left entry q contains Gamma1(N).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gammagen/cosets.hpp"
#include "gammagen/matcore.hpp"
#include "gammagen/words.hpp"

namespace gammagen {

/// gamma = eval(left_word) * g^{+-1} * eval(right_word) has top row (r, b),
/// and m divides (r - 1) / N. Every q with gcd(q, N m) = 1 and
/// q = N m b (mod |r|) puts the generator g inside H_q.
struct Witness {
  int gen_index = 0;
  std::int64_t r = 1, b = 0, m = 1;
  Word left_word, right_word;
  bool inverse_used = false;

  /// Residue N m b mod |r| in [0, |r|).
  std::int64_t residue(long N) const;
};

struct HarvestOptions {
  std::int64_t r_max = 3000;
  std::int64_t m_bound = 10000;
  std::size_t max_per_gen = 200000;
  /// Word length cap for levels below 4 (no height pruning there).
  int small_level_length = 14;
};

std::vector<Witness> find_witnesses(long N, const std::vector<Mat2>& gens, std::int64_t height_bound,
                                    const HarvestOptions& opts = {});
std::vector<Witness> find_witnesses(const TWBall& ball, const std::vector<Mat2>& gens,
                                    const HarvestOptions& opts = {});

/// The matrix eval(left) * g^{+-1} * eval(right).
Mat2 witness_matrix(const Witness& w, const std::vector<Mat2>& gens, long N);
/// Replays the construction: for admissible q builds gamma T^e h with upper-left q.
/// Returns false if q does not satisfy the witness or any identity fails.
bool replay_witness(const Witness& w, const std::vector<Mat2>& gens, long N, std::int64_t q);

struct Verdict {
  enum class Status { VerifiedSieve, VerifiedCoset, IndexMismatch, Inconclusive };
  std::int64_t q = 0;
  Status status = Status::Inconclusive;
  std::string via;
  /// Sieve: one witness id per generator. Coset: empty.
  std::vector<std::size_t> witness_ids;
  std::int64_t index = 0;
  std::int64_t expected_index = 0;

  bool verified() const { return status == Status::VerifiedSieve || status == Status::VerifiedCoset; }
};

std::string status_name(Verdict::Status s);

/// q in [q_lo, q_hi] coprime to N (prime if primes_only), ordered by q. Each
/// verdict is verified_sieve or inconclusive (via "sieve").
std::vector<Verdict> sieve_q(const std::vector<Witness>& witnesses, int gen_count, std::int64_t q_lo,
                             std::int64_t q_hi, bool primes_only, long N);

/// True iff the positive divisors of |n| meet every unit class modulo `modulus`.
bool divisor_coverage(std::int64_t n, std::int64_t modulus);

struct TWWitnessPairs {
  /// W = w_left * w_right^{-1} and T = t_left^{-1} * t_right; all four have upper-left q.
  Mat2 t_left, t_right, w_left, w_right;
};

TWWitnessPairs tw_in_hq_witnesses(long N, std::int64_t q);

/// Todd-Coxeter on {gamma_{q,a} : 1 <= a <= q, gcd(a, q) = 1} and the T, W witness matrices.
Verdict hq_coset_verify(long N, std::int64_t q, std::size_t max_cosets = 2'000'000);

struct VerifyHqConfig {
  long N = 1;
  std::int64_t q_from = 1, q_to = 1;
  bool primes_only = false;
  std::int64_t height_bound = 200;
  std::size_t max_cosets = 2'000'000;
  bool coset_fallback = true;
  HarvestOptions harvest{};
  /// Empty for no cache.
  std::string witness_cache;
};

struct VerifyHqReport {
  std::vector<Mat2> gens;
  std::size_t witness_count = 0;
  bool cache_hit = false;
  std::vector<Verdict> verdicts;
};

/// Generators of Gamma1(N), witness harvest (cached), sieve and coset fallback.
VerifyHqReport verify_hq(const VerifyHqConfig& cfg);

/// Stable 64-bit fingerprint of a generator list.
std::string generator_fingerprint(const std::vector<Mat2>& gens);

}  // namespace gammagen
