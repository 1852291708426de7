#include "gammagen/cyclo.hpp"

#include <boost/math/constants/constants.hpp>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "gammagen/arith.hpp"
#include "gammagen/error.hpp"

namespace gammagen {

namespace {

struct Modulus {
  long M = 1;
  long phi = 1;
  // Phi_M = prod_{a} (x^a - 1) / prod_{b} (x^b - 1).
  std::vector<long> a_divs, b_divs;
};

const Modulus& modulus(long M) {
  if (M < 1) throw DomainError("cyclotomic conductor must be positive");
  thread_local std::map<long, Modulus> cache;
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  Modulus md;
  md.M = M;
  md.phi = arith::euler_phi(M);
  for (long d : arith::divisors(M)) {
    int mu = arith::mobius(M / d);
    if (mu == 1) md.a_divs.push_back(d);
    if (mu == -1) md.b_divs.push_back(d);
  }
  return cache.emplace(M, std::move(md)).first->second;
}

inline void acc_add(std::int64_t& x, std::int64_t y) {
  if (__builtin_add_overflow(x, y, &x)) throw std::overflow_error("cyclotomic reduction overflow");
}
inline void acc_sub(std::int64_t& x, std::int64_t y) {
  if (__builtin_sub_overflow(x, y, &x)) throw std::overflow_error("cyclotomic reduction overflow");
}
inline void acc_add(Integer& x, const Integer& y) { x += y; }
inline void acc_sub(Integer& x, const Integer& y) { x -= y; }

template <class T>
std::vector<T> times_binomial(const std::vector<T>& p, long d) {
  // p * (x^d - 1)
  std::vector<T> out(p.size() + static_cast<std::size_t>(d), T(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc_add(out[i + static_cast<std::size_t>(d)], p[i]);
    acc_sub(out[i], p[i]);
  }
  return out;
}

// In place: p becomes its remainder mod (x^d - 1); returns the quotient.
template <class T>
std::vector<T> divide_binomial(std::vector<T>& p, long d) {
  auto ud = static_cast<std::size_t>(d);
  if (p.size() <= ud) return {};
  std::vector<T> q(p.size() - ud, T(0));
  for (std::size_t i = p.size(); i-- > ud;) {
    if (p[i] == 0) continue;
    T v = p[i];
    p[i] = 0;
    acc_add(p[i - ud], v);
    q[i - ud] = v;
  }
  p.resize(ud);
  return q;
}

template <class T>
std::vector<T> reduce_impl(long M, std::vector<T> c) {
  const Modulus& md = modulus(M);
  c.resize(static_cast<std::size_t>(M), T(0));
  // R = P mod Phi_M satisfies R * B = (P * B) mod A with A = Phi_M * B.
  std::vector<T> s = std::move(c);
  for (long b : md.b_divs) s = times_binomial(s, b);
  std::vector<T> quot = s;
  for (long a : md.a_divs) {
    std::vector<T> q = divide_binomial(quot, a);
    quot = std::move(q);
  }
  std::vector<T> aq = quot;
  for (long a : md.a_divs) aq = times_binomial(aq, a);
  if (aq.size() > s.size()) s.resize(aq.size(), T(0));
  for (std::size_t i = 0; i < aq.size(); ++i) acc_sub(s[i], aq[i]);
  for (long b : md.b_divs) {
    std::vector<T> q = divide_binomial(s, b);
    for (const T& r : s)
      if (r != 0) throw std::logic_error("cyclotomic reduction: inexact division");
    s = std::move(q);
  }
  for (std::size_t i = static_cast<std::size_t>(md.phi); i < s.size(); ++i)
    if (s[i] != 0) throw std::logic_error("cyclotomic reduction: degree too high");
  s.resize(static_cast<std::size_t>(md.phi), T(0));
  return s;
}

long lcm_l(long a, long b) { return static_cast<long>(arith::lcm(a, b)); }

// Power-basis coefficients scaled to integers: value = ints / den.
void to_integers(const std::vector<Rational>& c, std::vector<Integer>& ints, Integer& den) {
  den = 1;
  for (const Rational& x : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
  ints.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) ints[i] = c[i].get_num() * (den / c[i].get_den());
}

std::vector<Integer> reduce_integers(long M, std::vector<Integer> c) {
  bool small = true;
  for (const Integer& x : c)
    if (!x.fits_slong_p() || abs(x) > (Integer(1) << 40)) {
      small = false;
      break;
    }
  if (small) {
    try {
      std::vector<std::int64_t> v(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) v[i] = c[i].get_si();
      auto r = reduce_impl<std::int64_t>(M, std::move(v));
      std::vector<Integer> out(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) out[i] = Integer(static_cast<long>(r[i]));
      return out;
    } catch (const std::overflow_error&) {
    }
  }
  return reduce_impl<Integer>(M, std::move(c));
}

std::vector<Rational> scale_back(const std::vector<Integer>& ints, const Integer& den) {
  std::vector<Rational> out(ints.size());
  for (std::size_t i = 0; i < ints.size(); ++i) {
    if (ints[i] == 0) continue;
    out[i] = Rational(ints[i], den);
    if (den != 1) out[i].canonicalize();
  }
  return out;
}

std::vector<Rational> from_small(const std::vector<std::int64_t>& v) {
  std::vector<Rational> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out[i] = Rational(static_cast<long>(v[i]));
  return out;
}

// Integral vectors with small entries skip the multiprecision path.
bool small_integral(const std::vector<Rational>& c) {
  for (const Rational& x : c)
    if (x.get_den() != 1 || !x.get_num().fits_slong_p() || abs(x.get_num()) > (Integer(1) << 40)) return false;
  return true;
}

}  // namespace

std::vector<Integer> reduce_mod_cyclotomic(long M, const std::vector<Integer>& c) {
  return reduce_integers(M, c);
}

std::vector<std::int64_t> reduce_mod_cyclotomic_i64(long M, std::vector<std::int64_t> c) {
  return reduce_impl<std::int64_t>(M, std::move(c));
}

std::vector<Integer> cyclotomic_polynomial(long M) {
  const Modulus& md = modulus(M);
  std::vector<Integer> p{Integer(1)};
  for (long a : md.a_divs) p = times_binomial(p, a);
  for (long b : md.b_divs) {
    std::vector<Integer> q = divide_binomial(p, b);
    p = std::move(q);
  }
  p.resize(static_cast<std::size_t>(md.phi) + 1);
  return p;
}

CycloNumber::CycloNumber(long M, std::vector<Rational> coeffs) : M_(M), c_(std::move(coeffs)) {
  if (static_cast<long>(c_.size()) != modulus(M).phi)
    throw DomainError("CycloNumber: coefficient vector must have length phi(M)");
}

CycloNumber CycloNumber::from_powers(long M, const std::vector<Rational>& c) {
  std::vector<Rational> folded(static_cast<std::size_t>(M));
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) folded[i % static_cast<std::size_t>(M)] += c[i];
  if (small_integral(folded)) {
    std::vector<std::int64_t> v(folded.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = folded[i].get_num().get_si();
    try {
      return CycloNumber(M, from_small(reduce_impl<std::int64_t>(M, std::move(v))));
    } catch (const std::overflow_error&) {
    }
  }
  std::vector<Integer> ints;
  Integer den;
  to_integers(folded, ints, den);
  return CycloNumber(M, scale_back(reduce_integers(M, std::move(ints)), den));
}

CycloNumber CycloNumber::zeta(long M, long k) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(M), 0);
  c[static_cast<std::size_t>(arith::mod(k, M))] = 1;
  return CycloNumber(M, from_small(reduce_impl<std::int64_t>(M, std::move(c))));
}

bool CycloNumber::is_zero() const {
  for (const Rational& x : c_)
    if (x != 0) return false;
  return true;
}

bool CycloNumber::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rational CycloNumber::to_rational() const {
  if (!is_rational()) throw DomainError("CycloNumber: value is not rational");
  return c_[0];
}

CycloNumber CycloNumber::embed(long Mprime) const {
  if (Mprime < 1 || Mprime % M_ != 0) throw DomainError("embed: target conductor must be a multiple");
  if (Mprime == M_) return *this;
  if (is_rational()) {
    std::vector<Rational> c(static_cast<std::size_t>(modulus(Mprime).phi));
    c[0] = c_[0];
    return CycloNumber(Mprime, std::move(c));
  }
  long step = Mprime / M_;
  std::vector<Rational> c(static_cast<std::size_t>(Mprime));
  for (std::size_t i = 0; i < c_.size(); ++i) c[i * static_cast<std::size_t>(step)] = c_[i];
  return from_powers(Mprime, c);
}

CycloNumber CycloNumber::galois(long k) const {
  if (arith::gcd(k, M_) != 1) throw DomainError("galois: exponent must be a unit");
  std::vector<Rational> c(static_cast<std::size_t>(M_));
  for (std::size_t i = 0; i < c_.size(); ++i)
    c[static_cast<std::size_t>(arith::mod(static_cast<long>(i) * k, M_))] += c_[i];
  return from_powers(M_, c);
}

CycloNumber CycloNumber::conj() const { return galois(-1); }

CycloNumber& CycloNumber::operator+=(const CycloNumber& o) {
  long L = lcm_l(M_, o.M_);
  if (L != M_) *this = embed(L);
  const CycloNumber& b = o.M_ == L ? o : o.embed(L);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
  return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& o) { return *this += -o; }

CycloNumber operator-(CycloNumber a) {
  for (Rational& x : a.c_) x = -x;
  return a;
}

CycloNumber& CycloNumber::operator*=(const CycloNumber& o) {
  if (o.M_ == 1) {
    for (Rational& x : c_) x *= o.c_[0];
    return *this;
  }
  if (M_ == 1) {
    Rational s = c_[0];
    *this = o;
    for (Rational& x : c_) x *= s;
    return *this;
  }
  long L = lcm_l(M_, o.M_);
  CycloNumber a = M_ == L ? *this : embed(L);
  CycloNumber b = o.M_ == L ? o : o.embed(L);
  std::vector<Integer> ia, ib;
  Integer da, db;
  to_integers(a.c_, ia, da);
  to_integers(b.c_, ib, db);
  auto bits = [](const std::vector<Integer>& v) {
    std::size_t b = 0;
    for (const Integer& x : v) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
    return b;
  };
  std::size_t len_bits = mpz_sizeinbase(Integer(static_cast<long>(ia.size())).get_mpz_t(), 2);
  if (bits(ia) + bits(ib) + len_bits < 60) {
    std::vector<std::int64_t> sa(ia.size()), sb(ib.size());
    for (std::size_t i = 0; i < ia.size(); ++i) sa[i] = ia[i].get_si();
    for (std::size_t j = 0; j < ib.size(); ++j) sb[j] = ib[j].get_si();
    std::vector<std::int64_t> prod(static_cast<std::size_t>(L), 0);
    for (std::size_t i = 0; i < sa.size(); ++i) {
      if (sa[i] == 0) continue;
      for (std::size_t j = 0; j < sb.size(); ++j) prod[(i + j) % static_cast<std::size_t>(L)] += sa[i] * sb[j];
    }
    std::vector<Integer> wide(prod.size());
    for (std::size_t i = 0; i < prod.size(); ++i) wide[i] = Integer(static_cast<long>(prod[i]));
    *this = CycloNumber(L, scale_back(reduce_integers(L, std::move(wide)), da * db));
    return *this;
  }
  std::vector<Integer> prod(static_cast<std::size_t>(L));
  for (std::size_t i = 0; i < ia.size(); ++i) {
    if (ia[i] == 0) continue;
    for (std::size_t j = 0; j < ib.size(); ++j) {
      if (ib[j] == 0) continue;
      prod[(i + j) % static_cast<std::size_t>(L)] += ia[i] * ib[j];
    }
  }
  *this = CycloNumber(L, scale_back(reduce_integers(L, std::move(prod)), da * db));
  return *this;
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  if (a.M_ == b.M_) return a.c_ == b.c_;
  if (a.is_rational() || b.is_rational()) return a.is_rational() && b.is_rational() && a.c_[0] == b.c_[0];
  long L = lcm_l(a.M_, b.M_);
  return a.embed(L).c_ == b.embed(L).c_;
}

CycloNumber CycloNumber::pow(long e) const {
  if (e < 0) throw DomainError("CycloNumber::pow: negative exponent");
  CycloNumber result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::complex<double> CycloNumber::to_complex() const {
  std::complex<double> z = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    double th = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(M_);
    z += c_[i].get_d() * std::complex<double>(std::cos(th), std::sin(th));
  }
  return z;
}

Complex50 CycloNumber::to_complex50() const {
  using boost::multiprecision::cpp_bin_float_50;
  const cpp_bin_float_50 two_pi = 2 * boost::math::constants::pi<cpp_bin_float_50>();
  cpp_bin_float_50 re = 0, im = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    cpp_bin_float_50 v = cpp_bin_float_50(c_[i].get_num().get_str()) / cpp_bin_float_50(c_[i].get_den().get_str());
    cpp_bin_float_50 th = two_pi * static_cast<long>(i) / M_;
    re += v * cos(th);
    im += v * sin(th);
  }
  return Complex50(re, im);
}

std::string CycloNumber::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c_[i].get_str();
    } else {
      os << "(" << c_[i].get_str() << ")*z" << M_;
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

void RootSum::add(long k, std::int64_t v) {
  auto& slot = c_[static_cast<std::size_t>(arith::mod(k, M_))];
  acc_add(slot, v);
}

void RootSum::add_scaled(const RootSum& o, std::int64_t v) {
  if (o.M_ != M_) throw DomainError("RootSum: conductor mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (o.c_[i] == 0) continue;
    std::int64_t t;
    if (__builtin_mul_overflow(o.c_[i], v, &t)) throw std::overflow_error("RootSum overflow");
    acc_add(c_[i], t);
  }
}

RootSum RootSum::operator*(const RootSum& o) const {
  if (o.M_ != M_) throw DomainError("RootSum: conductor mismatch");
  RootSum out(M_);
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < o.c_.size(); ++j)
    if (o.c_[j] != 0) nz.push_back(j);
  auto uM = static_cast<std::size_t>(M_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j : nz) {
      std::int64_t t;
      if (__builtin_mul_overflow(c_[i], o.c_[j], &t)) throw std::overflow_error("RootSum overflow");
      std::size_t k = i + j;
      if (k >= uM) k -= uM;
      acc_add(out.c_[k], t);
    }
  }
  return out;
}

RootSum RootSum::conj() const {
  RootSum out(M_);
  for (std::size_t i = 0; i < c_.size(); ++i)
    out.c_[i == 0 ? 0 : static_cast<std::size_t>(M_) - i] = c_[i];
  return out;
}

bool RootSum::empty() const {
  for (auto v : c_)
    if (v != 0) return false;
  return true;
}

CycloNumber RootSum::value() const {
  try {
    return CycloNumber(M_, from_small(reduce_impl<std::int64_t>(M_, c_)));
  } catch (const std::overflow_error&) {
  }
  std::vector<Integer> ints(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) ints[i] = Integer(static_cast<long>(c_[i]));
  return CycloNumber(M_, scale_back(reduce_integers(M_, std::move(ints)), Integer(1)));
}

}  // namespace gammagen
