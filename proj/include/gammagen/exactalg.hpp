#pragma once

// Exact determinants over cyclotomic fields, the exponential-sum determinant
// test, and the block form of a zero pattern.

#include <cstdint>
#include <random>
#include <vector>

#include "gammagen/cyclo.hpp"

namespace gammagen {

using CycloMatrix = std::vector<std::vector<CycloNumber>>;

/// Division-free (Berkowitz) determinant.
CycloNumber exact_det(const CycloMatrix& a);
/// Partial-pivoting elimination at 50 digits.
Complex50 numeric_det50(const CycloMatrix& a);

/// S_{i,j} = sum_{a in subsets[i][j]} e(n a / (m q_j)).
struct ExpSumMatrix {
  long m = 1;
  long n = 1;
  std::vector<long> primes;
  std::vector<std::vector<std::vector<long>>> subsets;

  std::size_t size() const { return primes.size(); }
  long conductor() const;
  /// Throws PreconditionError naming the first violated hypothesis.
  void validate() const;
  CycloNumber entry(std::size_t i, std::size_t j) const;
  CycloMatrix matrix() const;
};

/// Random valid instance: h <= max_h distinct primes <= max_q (at most 13),
/// 1 <= m <= max_m, 1 <= n <= 50, disjoint columns with nonempty diagonal.
ExpSumMatrix random_exp_sum_matrix(std::mt19937_64& rng, int max_h, long max_q, long max_m);

struct KeyDetResult {
  CycloNumber det;
  bool nonzero = false;
};

/// Leibniz expansion in the group ring Z[C_M], reduced once modulo Phi_M.
KeyDetResult key_det_nonzero(const ExpSumMatrix& spec);

/// P A Q has rows row_perm and columns col_perm of A, in that order.
struct HallBlock {
  std::size_t m = 0;
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;
};

using Pattern = std::vector<std::vector<bool>>;

/// Top-left m x m block has a nonzero diagonal; top-right block is zero.
/// Throws PreconditionError on a zero row.
HallBlock hall_block_form(const Pattern& a);
/// Structural check of a HallBlock against its pattern.
bool check_block_form(const Pattern& a, const HallBlock& hb);

/// Sign of a permutation given as an index vector.
int permutation_sign(const std::vector<std::size_t>& p);

}  // namespace gammagen
