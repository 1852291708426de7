#pragma once

// Generating sets of Gamma0(N) for small N, as listed in the source table.

#include <string>
#include <vector>

#include "gammagen/matcore.hpp"

namespace gammagen {

struct GeneratorSymbol {
  enum class Kind { NegI, T, W, Gamma };
  Kind kind;
  int sign = 1;
  long q = 0, a = 0;

  std::string name() const;
  /// gamma_{q,a} uses the canonical completion of gamma_qa.
  Mat2 matrix(long N) const;
};

struct GeneratorRow {
  long N;
  std::vector<GeneratorSymbol> gens;
};

const std::vector<GeneratorRow>& small_level_table();
/// Nullptr when N is not tabulated.
const GeneratorRow* find_small_level(long N);
std::vector<Mat2> row_matrices(const GeneratorRow& row);

}  // namespace gammagen
