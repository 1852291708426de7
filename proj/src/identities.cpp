#include "gammagen/identities.hpp"

namespace gammagen {

Mat2 MatrixIdentity::rhs() const {
  Mat2 r = sign > 0 ? identity() : neg_identity();
  for (std::size_t i = 0; i < factors.size(); ++i) r = r * power(factors[i], powers[i]);
  return r;
}

bool MatrixIdentity::holds() const {
  if (!in_gamma0(lhs, N)) return false;
  for (const Mat2& f : factors)
    if (!in_gamma0(f, N)) return false;
  return lhs == rhs();
}

const std::vector<MatrixIdentity>& displayed_identities() {
  static const std::vector<MatrixIdentity> ids = [] {
    const Mat2 T = mat_T();
    std::vector<MatrixIdentity> v;
    v.push_back({6, "(5 -1; 6 -1) = -T W^-1", Mat2(5, -1, 6, -1), -1, {T, mat_W(6)}, {1, -1}});
    v.push_back({6, "(5 1; -6 -1) = -T^-1 W", Mat2(5, 1, -6, -1), -1, {T, mat_W(6)}, {-1, 1}});
    const Mat2 a15(2, -1, 15, -7), g15(11, -4, -30, 11);
    v.push_back({15, "(8 -1; -15 2) = T^-1 (2 -1; 15 -7)^-1", Mat2(8, -1, -15, 2), 1, {T, a15}, {-1, -1}});
    v.push_back({15, "(8 1; 15 2) = (2 -1; -15 8)^-1", Mat2(8, 1, 15, 2), 1, {Mat2(2, -1, -15, 8)}, {-1}});
    v.push_back({15, "(8 -3; 75 -28) = -(2 -1; 15 -7) T (11 -4; -30 11)", Mat2(8, -3, 75, -28), -1, {a15, T, g15},
                 {1, 1, 1}});
    v.push_back({15, "(8 3; 45 17) = -(2 -1; 15 -7) T (11 -4; -30 11)^-1", Mat2(8, 3, 45, 17), -1, {a15, T, g15},
                 {1, 1, -1}, false, "right side is (-52 -19; -405 -148); holds without the T"});
    const Mat2 g23(10, 3, 23, 7);
    v.push_back({23, "(3 -1; -23 8) = -(4 -1; -23 6) (6 -1; -23 4)^-1 (10 3; 23 7)^-1", Mat2(3, -1, -23, 8), -1,
                 {Mat2(4, -1, -23, 6), Mat2(6, -1, -23, 4), g23}, {1, -1, -1}});
    v.push_back({23, "(3 1; 23 8) = -(2 -1; 23 -11) (10 3; 23 7)", Mat2(3, 1, 23, 8), -1, {Mat2(2, -1, 23, -11), g23},
                 {1, 1}});
    v.push_back({15, "(8 3; 45 17) = -(2 -1; 15 -7) (11 -4; -30 11)^-1", Mat2(8, 3, 45, 17), -1, {a15, g15},
                 {1, -1}, true, "corrected form of the printed identity"});
    return v;
  }();
  return ids;
}

std::vector<TraceCondition> elliptic_trace_conditions(long max_level) {
  std::vector<TraceCondition> out;
  const long qs[] = {3, 4, 6};
  for (long q : qs)
    for (long s : qs) {
      long N = q * s - 1;
      if (N > max_level) continue;
      Mat2 gq(q, -1, -N, s), gs(s, -1, -N, q);
      Mat2 M = inv(gq) * translation(Rational(-2, s)) * inv(gs) * translation(Rational(-2, q));
      Mat2 expected(Rational(1), Rational(-2, q), Rational(2 * q) - Rational(2, s), Rational(-3) + Rational(4, q * s));
      out.push_back({"q=" + std::to_string(q) + " s=" + std::to_string(s), N, M, expected});
    }
  return out;
}

std::vector<TraceCondition> inverse_translation_conditions() {
  struct Row {
    long N;
    Mat2 g;
    Rational alpha;
  };
  const Row rows[] = {{6, Mat2(5, -2, -12, 5), Rational(4, 5)},
                      {15, Mat2(11, -4, -30, 11), Rational(3, 4)},
                      {23, Mat2(10, 3, 23, 7), Rational(-2, 3)}};
  std::vector<TraceCondition> out;
  for (const Row& r : rows) {
    Mat2 M = inv(r.g) * translation(-r.alpha);
    // Trace A + D + C alpha; the matrix itself is its own closed form.
    out.push_back({"gamma=" + format_mat2(r.g) + " alpha=" + r.alpha.get_str(), r.N, M, M});
  }
  return out;
}

}  // namespace gammagen
