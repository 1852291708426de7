#pragma once

// The matrix identities and trace conditions used for levels 6, 15, 23 and
// for N = qs - 1 with q, s in {3, 4, 6}.

#include <string>
#include <vector>

#include "gammagen/matcore.hpp"

namespace gammagen {

struct MatrixIdentity {
  long N;
  std::string text;
  Mat2 lhs;
  /// rhs = sign * prod factors[i]^{powers[i]}.
  int sign = 1;
  std::vector<Mat2> factors;
  std::vector<int> powers;
  /// False for a printed identity that does not hold; note says why.
  bool expected = true;
  std::string note;

  Mat2 rhs() const;
  /// lhs == rhs and every matrix involved lies in Gamma0(N).
  bool holds() const;
};

/// The eight identities as printed, then corrected forms of any that fail.
const std::vector<MatrixIdentity>& displayed_identities();

struct TraceCondition {
  std::string text;
  long N;
  Mat2 M;
  /// Closed form the product should equal.
  Mat2 expected;

  bool holds() const { return M == expected && is_elliptic_infinite(M); }
};

/// M = gamma_{q,1}^{-1} (1 -2/s; 0 1) gamma_{s,1}^{-1} (1 -2/q; 0 1) for
/// (q, s) in {3,4,6}^2 with qs - 1 <= max_level, gamma_{q,1} = (q -1; -N s).
std::vector<TraceCondition> elliptic_trace_conditions(long max_level = 23);
/// gamma^{-1} (1 -alpha; 0 1) for the three (gamma, alpha) pairs at N = 6, 15, 23.
std::vector<TraceCondition> inverse_translation_conditions();

}  // namespace gammagen
