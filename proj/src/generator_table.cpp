#include "gammagen/generator_table.hpp"

namespace gammagen {

namespace {

using K = GeneratorSymbol::Kind;

GeneratorSymbol negI() { return {K::NegI, 1, 0, 0}; }
GeneratorSymbol T() { return {K::T, 1, 0, 0}; }
GeneratorSymbol W(int sign = 1) { return {K::W, sign, 0, 0}; }
GeneratorSymbol g(long q, long a, int sign = 1) { return {K::Gamma, sign, q, a}; }

}  // namespace

std::string GeneratorSymbol::name() const {
  std::string s = sign < 0 ? "-" : "";
  switch (kind) {
    case K::NegI: return "-I";
    case K::T: return s + "T";
    case K::W: return s + "W";
    case K::Gamma: return s + "g(" + std::to_string(q) + "," + std::to_string(a) + ")";
  }
  return s;
}

Mat2 GeneratorSymbol::matrix(long N) const {
  Mat2 m;
  switch (kind) {
    case K::NegI: return neg_identity();
    case K::T: m = mat_T(); break;
    case K::W: m = mat_W(N); break;
    case K::Gamma: m = gamma_qa(N, q, a); break;
  }
  return sign < 0 ? neg(m) : m;
}

const std::vector<GeneratorRow>& small_level_table() {
  static const std::vector<GeneratorRow> table = {
      {1, {T(), W()}},
      {2, {T(), W()}},
      {3, {T(), W(-1)}},
      {4, {negI(), T(), W()}},
      {5, {T(), W(), g(2, 1)}},
      {6, {negI(), T(), W(), g(5, 2)}},
      {7, {T(), W(), g(2, 1, -1)}},
      {8, {negI(), T(), W(), g(3, 1)}},
      {9, {negI(), T(), W(), g(2, 1)}},
      {11, {negI(), W(), g(2, 1), g(3, 1)}},
      {15, {negI(), T(), W(), g(2, 1), g(4, 1), g(11, 4)}},
      {17, {T(), W(), g(2, 1), g(3, 1), g(6, 1)}},
      {23, {negI(), T(), W(), g(2, 1), g(4, 1), g(6, 1), g(10, -3)}},
  };
  return table;
}

const GeneratorRow* find_small_level(long N) {
  for (const auto& row : small_level_table())
    if (row.N == N) return &row;
  return nullptr;
}

std::vector<Mat2> row_matrices(const GeneratorRow& row) {
  std::vector<Mat2> out;
  for (const auto& s : row.gens) out.push_back(s.matrix(row.N));
  return out;
}

}  // namespace gammagen
