#pragma once

// Todd-Coxeter enumeration over SL2(Z) = <S, T | S^4, S^2 (ST)^3> and the
// coset geometry of Gamma1(N).

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "gammagen/matcore.hpp"
#include "gammagen/words.hpp"

namespace gammagen {

/// Column order of coset tables: S, S^-1, T, T^-1.
inline constexpr int kCols = 4;

struct CosetTable {
  /// Coset 0 is the subgroup itself; rows are compacted and complete.
  std::vector<std::array<std::int32_t, kCols>> rows;
  std::size_t size() const { return rows.size(); }
};

enum class TCStrategy { Felsch, HLT };

struct TCOptions {
  std::size_t max_cosets = 2'000'000;
  TCStrategy strategy = TCStrategy::Felsch;
};

struct TCResult {
  enum class Status { Complete, Overflow };
  Status status = Status::Overflow;
  std::int64_t index = 0;
  std::size_t cosets_defined = 0;
  std::size_t max_live = 0;
  /// Relators close at every coset and subgroup words close at coset 0.
  bool audit_ok = false;
  std::optional<CosetTable> table;

  bool complete() const { return status == Status::Complete; }
};

TCResult todd_coxeter(const std::vector<STWord>& subgens, const TCOptions& opts = {});

/// Index in SL2(Z) of the subgroup generated by the given integer matrices.
TCResult subgroup_index(const std::vector<Mat2>& gens, const TCOptions& opts = {});

struct Gamma1Action {
  long N = 1;
  /// Bottom rows (c, d) mod N with gcd(c, d, N) = 1; label 0 is (0, 1).
  std::vector<std::pair<long, long>> labels;
  /// Right multiplication: label i maps to perm_S[i] under S, perm_T[i] under T.
  std::vector<std::size_t> perm_S, perm_T;
  std::size_t label_of(long c, long d) const;
  /// Label of (c, d) at index c*N + d, or -1.
  std::vector<std::int64_t> lookup;
};

Gamma1Action gamma1_coset_action(long N);

struct SchreierOptions {
  /// Drop generators that are redundant by index, verified with Todd-Coxeter.
  bool prune = true;
  TCOptions tc{};
};

/// A generating set of Gamma1(N) in SL2(Z) from a spanning tree of the coset
/// graph; trivial generators are removed. Throws if the index check fails.
std::vector<Mat2> schreier_generators(long N, const SchreierOptions& opts = {});

std::int64_t index_gamma0(long N);
std::int64_t index_gamma1(long N);
/// Index of the preimage of <q> under the upper-left entry map of Gamma0(N).
std::int64_t index_gamma_q(long N, long q);

}  // namespace gammagen
