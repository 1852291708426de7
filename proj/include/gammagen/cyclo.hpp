#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_M).

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_complex.hpp>

#include "gammagen/matcore.hpp"

namespace gammagen {

using Complex50 = boost::multiprecision::cpp_complex_50;

/// Element of Q(zeta_M) in the power basis 1, zeta_M, ..., zeta_M^{phi(M)-1}.
class CycloNumber {
 public:
  CycloNumber() : M_(1), c_{Rational(0)} {}
  CycloNumber(long v) : M_(1), c_{Rational(v)} {}  // NOLINT: implicit integers
  CycloNumber(const Rational& v) : M_(1), c_{v} {}  // NOLINT
  /// Coefficients must already be reduced (length phi(M)).
  CycloNumber(long M, std::vector<Rational> coeffs);

  /// zeta_M^k.
  static CycloNumber zeta(long M, long k = 1);
  /// Reduces sum_k c[k] zeta_M^k for a coefficient vector of any length.
  static CycloNumber from_powers(long M, const std::vector<Rational>& c);

  long conductor() const { return M_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  /// Value as a rational; throws unless is_rational().
  Rational to_rational() const;

  /// Same value over Q(zeta_{M'}); throws unless M divides M'.
  CycloNumber embed(long Mprime) const;
  /// Image under zeta -> zeta^{-1}.
  CycloNumber conj() const;
  /// Image under zeta -> zeta^k for k a unit mod M.
  CycloNumber galois(long k) const;

  CycloNumber& operator+=(const CycloNumber& o);
  CycloNumber& operator-=(const CycloNumber& o);
  CycloNumber& operator*=(const CycloNumber& o);
  friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
  friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
  friend CycloNumber operator*(CycloNumber a, const CycloNumber& b) { return a *= b; }
  friend CycloNumber operator-(CycloNumber a);
  friend bool operator==(const CycloNumber& a, const CycloNumber& b);
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

  CycloNumber pow(long e) const;

  std::complex<double> to_complex() const;
  Complex50 to_complex50() const;
  std::string str() const;

 private:
  long M_;
  std::vector<Rational> c_;
};

/// Element of the integral group ring Z[C_M], mapped onto Z[zeta_M].
class RootSum {
 public:
  explicit RootSum(long M = 1) : M_(M), c_(static_cast<std::size_t>(M), 0) {}

  long conductor() const { return M_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  /// Adds v * zeta_M^k.
  void add(long k, std::int64_t v = 1);
  void add_scaled(const RootSum& o, std::int64_t v);
  RootSum operator*(const RootSum& o) const;
  RootSum conj() const;
  bool empty() const;

  CycloNumber value() const;

 private:
  long M_;
  std::vector<std::int64_t> c_;
};

/// Reduces a length-M integer vector modulo Phi_M; returns phi(M) coefficients.
std::vector<Integer> reduce_mod_cyclotomic(long M, const std::vector<Integer>& c);
std::vector<std::int64_t> reduce_mod_cyclotomic_i64(long M, std::vector<std::int64_t> c);

/// Coefficients of Phi_M, lowest degree first.
std::vector<Integer> cyclotomic_polynomial(long M);

}  // namespace gammagen
