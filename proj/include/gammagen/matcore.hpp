#pragma once

// 2x2 matrices over Q, congruence subgroups of level N and the height function.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace gammagen {

using Rational = mpq_class;
using Integer = mpz_class;

class Mat2 {
 public:
  Mat2() : e_{Rational(1), Rational(0), Rational(0), Rational(1)} {}
  Mat2(Rational a, Rational b, Rational c, Rational d);

  const Rational& a() const { return e_[0]; }
  const Rational& b() const { return e_[1]; }
  const Rational& c() const { return e_[2]; }
  const Rational& d() const { return e_[3]; }

  Rational det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
  Rational trace() const { return e_[0] + e_[3]; }
  bool is_integral() const;

  friend bool operator==(const Mat2& x, const Mat2& y);
  friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }

 private:
  std::array<Rational, 4> e_;
};

Mat2 identity();
Mat2 neg_identity();
Mat2 mat_T();
Mat2 mat_T_inv();
Mat2 mat_W(long N);
Mat2 mat_W_inv(long N);
Mat2 mat_S();
/// (1 x; 0 1) for rational x.
Mat2 translation(const Rational& x);

Mat2 mul(const Mat2& x, const Mat2& y);
Mat2 neg(const Mat2& x);
/// Throws DomainError unless det = 1.
Mat2 inv(const Mat2& x);
Mat2 power(const Mat2& x, long k);

inline Mat2 operator*(const Mat2& x, const Mat2& y) { return mul(x, y); }
inline Mat2 operator-(const Mat2& x) { return neg(x); }

bool in_sl2z(const Mat2& M);
bool in_gamma0(const Mat2& M, long N);
bool in_gamma1(const Mat2& M, long N);

/// Canonical element of Gamma0(N) with top row (q, -a).
Mat2 gamma_qa(long N, const Integer& q, const Integer& a);
Mat2 gamma_qa(long N, long q, long a);

/// max(|a|, |b|, |c/N|, |d|); throws DomainError outside Gamma0(N).
Integer height(const Mat2& M, long N);

/// |tr M| < 2 and tr M not an integer.
bool is_elliptic_infinite(const Mat2& M);

/// If M' and M share a top row in Gamma0(N), returns k with M' M^{-1} = W^k.
std::optional<Integer> w_power_between(const Mat2& Mprime, const Mat2& M, long N);

/// "[[a,b],[c,d]]" with integer or p/q entries; whitespace tolerated.
Mat2 parse_mat2(const std::string& text);
std::string format_mat2(const Mat2& M);

/// Integer matrix on machine words; every operation checks for overflow.
struct IntMat2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  friend bool operator==(const IntMat2&, const IntMat2&) = default;
};

IntMat2 imul(const IntMat2& x, const IntMat2& y);
IntMat2 iinv(const IntMat2& x);
IntMat2 to_int(const Mat2& M);
Mat2 to_rational(const IntMat2& M);
/// Height of an integer matrix already known to lie in Gamma0(N).
std::int64_t iheight(const IntMat2& M, std::int64_t N);

}  // namespace gammagen
