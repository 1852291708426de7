#include "gammagen/twists.hpp"

#include <boost/multiprecision/cpp_complex.hpp>
#include <numeric>
#include <sstream>

#include "gammagen/arith.hpp"
#include "gammagen/error.hpp"
#include "json.hpp"

namespace gammagen {

namespace {

long primitive_root_mod_p(long p) {
  if (p == 2) return 1;
  auto factors = arith::prime_divisors(p - 1);
  for (long g = 2;; ++g) {
    bool ok = true;
    for (long r : factors)
      if (arith::pow_mod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

// x = g mod m1, x = 1 mod m2.
long crt_lift(long g, long m1, long m2) {
  if (m2 == 1) return arith::mod(g, m1);
  long t = arith::mul_mod(arith::mod(1 - g, m2), arith::inv_mod(arith::mod(m1, m2), m2), m2);
  return arith::mod(g + m1 * t, m1 * m2);
}

}  // namespace

UnitGroup unit_group(long q) {
  if (q < 1) throw DomainError("unit_group: modulus must be positive");
  UnitGroup G;
  G.q = q;
  for (auto [p, e] : arith::factorize(q)) {
    long pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    long rest = q / pe;
    if (p == 2) {
      if (e >= 2) {
        G.gens.push_back(crt_lift(pe - 1, pe, rest));
        G.orders.push_back(2);
      }
      if (e >= 3) {
        G.gens.push_back(crt_lift(5, pe, rest));
        G.orders.push_back(pe / 4);
      }
      continue;
    }
    long g = primitive_root_mod_p(p);
    if (e >= 2 && arith::pow_mod(g, p - 1, p * p) == 1) g += p;
    G.gens.push_back(crt_lift(g, pe, rest));
    G.orders.push_back(pe / p * (p - 1));
  }
  return G;
}

DirichletCharacter DirichletCharacter::trivial(long q) {
  return from_exponents(q, std::vector<long>(unit_group(q).gens.size(), 0));
}

DirichletCharacter DirichletCharacter::from_exponents(long q, const std::vector<long>& k) {
  UnitGroup G = unit_group(q);
  if (k.size() != G.gens.size())
    throw DomainError("character mod " + std::to_string(q) + " needs " + std::to_string(G.gens.size()) +
                      " exponents");
  long E = 1;
  for (long o : G.orders) E = arith::lcm(E, o);
  std::vector<long> exps(static_cast<std::size_t>(q), -1);
  std::vector<long> j(G.gens.size(), 0);
  for (;;) {
    long a = 1 % q, e = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
      a = arith::mul_mod(a, arith::pow_mod(G.gens[i], j[i], q), q);
      e = arith::mod(e + arith::mod(k[i], G.orders[i]) * j[i] % G.orders[i] * (E / G.orders[i]), E);
    }
    exps[static_cast<std::size_t>(a)] = e;
    std::size_t i = 0;
    while (i < j.size() && ++j[i] == G.orders[i]) j[i++] = 0;
    if (i == j.size()) break;
  }
  return from_table(q, std::move(exps), E);
}

DirichletCharacter DirichletCharacter::from_table(long q, std::vector<long> exps, long order) {
  long g = order;
  for (long e : exps)
    if (e > 0) g = arith::gcd(g, e);
  DirichletCharacter c;
  c.q_ = q;
  c.order_ = order / g;
  for (long& e : exps)
    if (e > 0) e /= g;
  c.exp_ = std::move(exps);
  c.finish();
  return c;
}

void DirichletCharacter::finish() {
  UnitGroup G = unit_group(q_);
  k_.clear();
  for (std::size_t i = 0; i < G.gens.size(); ++i)
    k_.push_back(exp_[static_cast<std::size_t>(G.gens[i])] * G.orders[i] / order_);
  for (long d : arith::divisors(q_)) {
    bool induced = true;
    for (long a = 1 % d; a < q_ && induced; a += d)
      if (exp_[static_cast<std::size_t>(a)] > 0) induced = false;
    if (induced) {
      conductor_ = d;
      return;
    }
  }
}

std::vector<DirichletCharacter> DirichletCharacter::all(long q) {
  UnitGroup G = unit_group(q);
  std::vector<DirichletCharacter> out;
  std::vector<long> k(G.gens.size(), 0);
  for (;;) {
    out.push_back(from_exponents(q, k));
    std::size_t i = k.size();
    while (i > 0) {
      --i;
      if (++k[i] < G.orders[i]) break;
      k[i] = 0;
      if (i == 0) return out;
    }
    if (k.empty()) return out;
  }
}

long DirichletCharacter::exponent(long n) const { return exp_[static_cast<std::size_t>(arith::mod(n, q_))]; }

CycloNumber DirichletCharacter::value(long n) const {
  long e = exponent(n);
  if (e < 0) return CycloNumber(0);
  return CycloNumber::zeta(order_, e);
}

std::vector<CycloNumber> DirichletCharacter::values() const {
  std::vector<CycloNumber> out;
  for (long a = 0; a < q_; ++a) out.push_back(value(a));
  return out;
}

DirichletCharacter DirichletCharacter::primitive() const {
  if (conductor_ == q_) return *this;
  std::vector<long> exps(static_cast<std::size_t>(conductor_), -1);
  for (long b = 0; b < conductor_; ++b) {
    if (arith::gcd(b, conductor_) != 1) continue;
    long a = b;
    while (arith::gcd(a, q_) != 1) a += conductor_;
    exps[static_cast<std::size_t>(b)] = exp_[static_cast<std::size_t>(a % q_)];
  }
  return from_table(conductor_, std::move(exps), order_);
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<long> exps = exp_;
  for (long& e : exps)
    if (e > 0) e = order_ - e;
  return from_table(q_, std::move(exps), order_);
}

long DirichletCharacter::q0() const {
  long r = 1;
  for (long p : arith::prime_divisors(q_))
    if (conductor_ % p != 0) r *= p;
  return r;
}

long DirichletCharacter::q2() const { return q_ / (conductor_ * q0()); }

int DirichletCharacter::parity() const { return exponent(-1) == 0 ? 1 : -1; }

std::string DirichletCharacter::label() const {
  std::ostringstream os;
  os << q_ << "[";
  for (std::size_t i = 0; i < k_.size(); ++i) os << (i ? "," : "") << k_[i];
  os << "]";
  return os.str();
}

Integer ramanujan_c(long q, long n) {
  if (q < 1) throw DomainError("ramanujan_c: q must be positive");
  long g = arith::gcd(q, n);
  if (g == 0) g = q;
  return Integer(arith::mobius(q / g)) * Integer(arith::euler_phi(q) / arith::euler_phi(q / g));
}

Integer ramanujan_c_direct(long q, long n) {
  if (q < 1) throw DomainError("ramanujan_c: q must be positive");
  RootSum s(q);
  for (long a = 0; a < q; ++a)
    if (arith::gcd(a, q) == 1) s.add(arith::mul_mod(a, arith::mod(n, q), q));
  return s.value().to_rational().get_num();
}

CycloNumber c_chi_direct(const DirichletCharacter& chi, long n) {
  long q = chi.modulus(), o = chi.order();
  long L = arith::lcm(q, o);
  RootSum s(L);
  long nm = arith::mod(n, q);
  for (long a = 0; a < q; ++a) {
    long e = chi.exponent(a);
    if (e < 0) continue;
    s.add(e * (L / o) + arith::mul_mod(a, nm, q) * (L / q));
  }
  return s.value();
}

CycloNumber gauss_sum(const DirichletCharacter& chi) {
  if (!chi.is_primitive()) throw PreconditionError("gauss_sum: character " + chi.label() + " is not primitive");
  return c_chi_direct(chi, 1);
}

CChi::CChi(const DirichletCharacter& chi) : chi_(chi), star_(chi.primitive()), q0_(chi.q0()), q2_(chi.q2()) {
  long qs = star_.modulus(), o = star_.order();
  long L = arith::lcm(qs, o);
  tau_sum_ = RootSum(L);
  for (long a = 0; a < qs; ++a) {
    long e = star_.exponent(a);
    if (e >= 0) tau_sum_.add(e * (L / o) + a * (L / qs));
  }
  tau_ = tau_sum_.value();
}

CycloNumber CChi::operator()(long n) const {
  if (n % q2_ != 0) return CycloNumber(0);
  long m = n / q2_;
  long g = arith::gcd(q0_, m);
  if (g == 0) g = q0_;
  long e1 = star_.exponent(q0_), e2 = star_.exponent(m);
  if (e1 < 0 || e2 < 0) return CycloNumber(0);
  std::int64_t coef = static_cast<std::int64_t>(q2_) * arith::mobius(q0_) * arith::mobius(g) * arith::euler_phi(g);
  if (coef == 0) return CycloNumber(0);
  long L = tau_sum_.conductor(), o = star_.order();
  long shift = arith::mod(e1 - e2, o) * (L / o);
  RootSum s(L);
  const auto& c = tau_sum_.coeffs();
  for (long k = 0; k < L; ++k)
    if (c[static_cast<std::size_t>(k)] != 0) s.add(k + shift, c[static_cast<std::size_t>(k)] * coef);
  return s.value();
}

CycloNumber c_chi(const DirichletCharacter& chi, long n) { return CChi(chi)(n); }

CycloNumber HeckeCoefficients::prime_power(long p, int j) const {
  if (j < 0) return CycloNumber(0);
  if (j == 0) return CycloNumber(1);
  long pj = 1;
  for (int i = 0; i < j; ++i) {
    if (pj > bound / p) throw PreconditionError("coefficient index exceeds bound " + std::to_string(bound));
    pj *= p;
  }
  if (N % p == 0) {
    auto it = bad.find(pj);
    if (it == bad.end()) throw PreconditionError("missing coefficient data at " + std::to_string(pj));
    return it->second;
  }
  auto it = good.find(p);
  if (it == good.end()) throw PreconditionError("missing coefficient data at prime " + std::to_string(p));
  const CycloNumber& lp = it->second;
  CycloNumber xp = xi.value(p);
  CycloNumber prev(1), cur = lp;
  for (int i = 1; i < j; ++i) {
    CycloNumber next = lp * cur - xp * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

CycloNumber HeckeCoefficients::coefficient(long n) const {
  if (n < 1 || n > bound) throw PreconditionError("coefficient index " + std::to_string(n) + " outside 1.." +
                                                  std::to_string(bound));
  CycloNumber r(1);
  for (auto [p, e] : arith::factorize(n)) r *= prime_power(p, e);
  return r;
}

std::vector<CycloNumber> HeckeCoefficients::table(long X) const {
  if (X > bound) throw PreconditionError("coefficient table exceeds bound " + std::to_string(bound));
  std::vector<CycloNumber> t(static_cast<std::size_t>(std::max<long>(X, 0)) + 1);
  if (X >= 1) t[1] = CycloNumber(1);
  std::vector<long> spf(t.size(), 0);
  for (long i = 2; i <= X; ++i)
    if (spf[static_cast<std::size_t>(i)] == 0)
      for (long j = i; j <= X; j += i)
        if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = i;
  std::map<std::pair<long, int>, CycloNumber> pp;
  for (long n = 2; n <= X; ++n) {
    long p = spf[static_cast<std::size_t>(n)], m = n;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    auto key = std::make_pair(p, e);
    auto it = pp.find(key);
    if (it == pp.end()) it = pp.emplace(key, prime_power(p, e)).first;
    t[static_cast<std::size_t>(n)] = m == 1 ? it->second : it->second * t[static_cast<std::size_t>(m)];
  }
  return t;
}

HeckeCoefficients HeckeCoefficients::dual() const {
  HeckeCoefficients d = *this;
  d.xi = xi.conj();
  for (auto& [p, v] : d.good) v = d.xi.value(p) * v;
  return d;
}

HeckeCoefficients HeckeCoefficients::random(long N, const DirichletCharacter& xi, long bound, std::mt19937_64& rng) {
  if (xi.modulus() != N) throw DomainError("nebentypus modulus must equal the level");
  std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
  HeckeCoefficients h;
  h.N = N;
  h.xi = xi;
  h.bound = bound;
  for (long p : arith::primes_up_to(bound)) {
    if (N % p != 0) {
      Rational r(num(rng), den(rng));
      r.canonicalize();
      h.good[p] = CycloNumber(r);
      continue;
    }
    for (long pj = p; pj <= bound; pj *= p) {
      Rational r(num(rng), den(rng));
      r.canonicalize();
      h.bad[pj] = CycloNumber(r);
      if (pj > bound / p) break;
    }
  }
  return h;
}

namespace {

using nlohmann::json;

CycloNumber cyclo_from_json(const json& j) {
  if (j.is_string()) return CycloNumber(Rational(j.get<std::string>()));
  if (j.is_number_integer()) return CycloNumber(j.get<long>());
  if (j.is_object()) {
    long M = j.at("conductor").get<long>();
    std::vector<Rational> c;
    for (const auto& x : j.at("coeffs")) c.emplace_back(x.is_string() ? Rational(x.get<std::string>()) : Rational(x.get<long>()));
    for (auto& r : c) r.canonicalize();
    return CycloNumber::from_powers(M, c);
  }
  throw ParseError("coefficient must be a rational string or {conductor, coeffs}");
}

json cyclo_to_json(const CycloNumber& c) {
  if (c.is_rational()) return c.to_rational().get_str();
  json coeffs = json::array();
  for (const auto& r : c.coeffs()) coeffs.push_back(r.get_str());
  return json{{"conductor", c.conductor()}, {"coeffs", coeffs}};
}

}  // namespace

HeckeCoefficients HeckeCoefficients::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("coefficient file: ") + e.what());
  }
  try {
    HeckeCoefficients h;
    h.N = j.at("N").get<long>();
    if (h.N < 1) throw ParseError("coefficient file: N must be positive");
    const json& xs = j.contains("xi") ? j.at("xi") : json("trivial");
    if (xs.is_string()) {
      if (xs.get<std::string>() != "trivial") throw ParseError("coefficient file: xi must be \"trivial\" or an object");
      h.xi = DirichletCharacter::trivial(h.N);
    } else {
      long mod = xs.value("modulus", h.N);
      if (mod != h.N) throw ParseError("coefficient file: xi modulus must equal N");
      h.xi = DirichletCharacter::from_exponents(h.N, xs.at("exponents").get<std::vector<long>>());
    }
    long maxkey = 1;
    if (j.contains("lambda"))
      for (auto& [k, v] : j.at("lambda").items()) {
        long p = std::stol(k);
        if (!arith::is_prime(p) || h.N % p == 0)
          throw ParseError("coefficient file: lambda keys must be primes not dividing N");
        h.good[p] = cyclo_from_json(v);
        maxkey = std::max(maxkey, p);
      }
    if (j.contains("bad"))
      for (auto& [k, v] : j.at("bad").items()) {
        long n = std::stol(k);
        auto f = arith::factorize(n);
        if (f.size() != 1 || h.N % f[0].p != 0)
          throw ParseError("coefficient file: bad keys must be powers of primes dividing N");
        h.bad[n] = cyclo_from_json(v);
        maxkey = std::max(maxkey, n);
      }
    h.bound = j.value("bound", maxkey);
    return h;
  } catch (const json::exception& e) {
    throw ParseError(std::string("coefficient file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const DomainError*>(&e)) throw ParseError(std::string("coefficient file: ") + e.what());
    throw ParseError(std::string("coefficient file: bad number: ") + e.what());
  }
}

std::string HeckeCoefficients::to_json() const {
  json j;
  j["N"] = N;
  if (xi.is_trivial())
    j["xi"] = "trivial";
  else
    j["xi"] = json{{"modulus", N}, {"exponents", xi.exponents()}};
  j["bound"] = bound;
  json lam = json::object(), bd = json::object();
  for (const auto& [p, v] : good) lam[std::to_string(p)] = cyclo_to_json(v);
  for (const auto& [n, v] : bad) bd[std::to_string(n)] = cyclo_to_json(v);
  j["lambda"] = lam;
  j["bad"] = bd;
  return j.dump();
}

DirichletPolynomial DirichletPolynomial::constant(const CycloNumber& c) { return monomial({}, c); }

DirichletPolynomial DirichletPolynomial::monomial(const Key& key, const CycloNumber& c) {
  DirichletPolynomial d;
  d.add_term(key, c);
  return d;
}

void DirichletPolynomial::add_term(const Key& key, const CycloNumber& c) {
  if (c.is_zero()) return;
  Key k;
  for (auto [p, e] : key)
    if (e != 0) k[p] = e;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(std::move(k), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

DirichletPolynomial& DirichletPolynomial::operator+=(const DirichletPolynomial& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

DirichletPolynomial operator*(const DirichletPolynomial& a, const DirichletPolynomial& b) {
  DirichletPolynomial out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      DirichletPolynomial::Key k = ka;
      for (auto [p, e] : kb) k[p] += e;
      out.add_term(k, ca * cb);
    }
  return out;
}

DirichletPolynomial operator*(const CycloNumber& c, const DirichletPolynomial& a) {
  return DirichletPolynomial::constant(c) * a;
}

DirichletPolynomial DirichletPolynomial::reflect() const {
  DirichletPolynomial out;
  for (const auto& [k, c] : terms_) {
    Key nk;
    Integer num = 1, den = 1;
    for (auto [p, e] : k) {
      nk[p] = -e;
      Integer pe;
      mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(std::abs(e)));
      (e > 0 ? den : num) *= pe;
    }
    Rational scale(num, den);
    scale.canonicalize();
    out.add_term(nk, c * CycloNumber(scale));
  }
  return out;
}

Complex50 DirichletPolynomial::evaluate(const Complex50& s) const {
  Complex50 total(0);
  for (const auto& [k, c] : terms_) {
    Complex50 term = c.to_complex50();
    for (auto [p, e] : k) term *= exp(-s * Complex50(e) * log(Complex50(p)));
    total += term;
  }
  return total;
}

std::vector<long> DirichletPolynomial::primes() const {
  std::vector<long> out;
  for (const auto& [k, c] : terms_)
    for (auto [p, e] : k) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string DirichletPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (auto [p, e] : k) {
      os << "*u" << p;
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

long key_value(const DirichletPolynomial::Key& key) {
  long n = 1;
  for (auto [p, e] : key) {
    if (e < 0) throw DomainError("key_value: negative exponent");
    for (int i = 0; i < e; ++i) n *= p;
  }
  return n;
}

DirichletPolynomial build_D(const HeckeCoefficients& h, const DirichletCharacter& chi) {
  const long q = chi.modulus();
  if (arith::gcd(q, h.N) != 1) throw PreconditionError("build_D: modulus must be coprime to the level");
  DirichletCharacter star = chi.primitive();
  const long qs = star.modulus();
  DirichletPolynomial D = DirichletPolynomial::constant(1);
  using Key = DirichletPolynomial::Key;
  for (long p : arith::prime_divisors(q)) {
    if (qs % p == 0) {
      int t = arith::valuation(q / qs, p);
      if (t == 0) continue;
      long pt = 1;
      for (int i = 0; i < t; ++i) pt *= p;
      D = D * DirichletPolynomial::monomial(Key{{p, t}}, h.prime_power(p, t) * CycloNumber(pt));
      continue;
    }
    int e = arith::valuation(q, p);
    CycloNumber xp = h.xi.value(p), cp = star.value(p), cpbar = star.conj().value(p);
    DirichletPolynomial F = DirichletPolynomial::monomial(Key{{p, 1}}, h.prime_power(p, e) * CycloNumber(p));
    F += DirichletPolynomial::monomial(Key{{p, 1}}, h.prime_power(p, e - 2) * xp);
    F += DirichletPolynomial::constant(-(h.prime_power(p, e - 1) * cp));
    F += DirichletPolynomial::monomial(Key{{p, 2}}, -(h.prime_power(p, e - 1) * xp * cpbar * CycloNumber(p)));
    long pe1 = 1;
    for (int i = 0; i < e - 1; ++i) pe1 *= p;
    D = D * DirichletPolynomial::monomial(Key{{p, e - 1}}, CycloNumber(pe1)) * F;
  }
  return D;
}

namespace {

void check_support(const DirichletPolynomial& D, long q) {
  for (long p : D.primes())
    if (q % p != 0) throw PreconditionError("check_fe: term prime " + std::to_string(p) + " does not divide q");
}

}  // namespace

bool check_fe(const DirichletPolynomial& Df, const DirichletPolynomial& Dg, long q, long q_star,
              const DirichletCharacter& xi) {
  if (q_star < 1 || q % q_star != 0) throw PreconditionError("check_fe: q* must divide q");
  check_support(Df, q);
  check_support(Dg, q);
  long r = q / q_star;
  DirichletPolynomial::Key k;
  for (long p : arith::prime_divisors(r)) k[p] = 2 * arith::valuation(r, p);
  DirichletPolynomial rhs = DirichletPolynomial::monomial(k, CycloNumber(r) * xi.value(r)) * Dg.reflect();
  return Df == rhs;
}

double check_fe_numeric(const DirichletPolynomial& Df, const DirichletPolynomial& Dg, long q, long q_star,
                        const DirichletCharacter& xi) {
  using boost::multiprecision::cpp_bin_float_50;
  const Complex50 points[] = {Complex50(cpp_bin_float_50("0.3"), cpp_bin_float_50("1.7")),
                              Complex50(cpp_bin_float_50("-0.8"), cpp_bin_float_50("0.25")),
                              Complex50(cpp_bin_float_50("1.9"), cpp_bin_float_50("-2.2"))};
  long r = q / q_star;
  Complex50 xr = xi.value(r).to_complex50();
  cpp_bin_float_50 worst = 0;
  for (const Complex50& s : points) {
    Complex50 lhs = Df.evaluate(s);
    Complex50 rhs = exp((Complex50(1) - Complex50(2) * s) * log(Complex50(r))) * xr * Dg.evaluate(Complex50(1) - s);
    cpp_bin_float_50 err = abs(lhs - rhs);
    if (err > worst) worst = err;
  }
  return static_cast<double>(worst);
}

bool oracle_twist_ratio(const HeckeCoefficients& h, const DirichletCharacter& chi, long X) {
  return oracle_twist_ratio(h, chi, X, build_D(h, chi));
}

bool oracle_twist_ratio(const HeckeCoefficients& h, const DirichletCharacter& chi, long X,
                        const DirichletPolynomial& D) {
  if (X < 1) throw PreconditionError("oracle_twist_ratio: X must be positive");
  // Terms of D beyond X do not reach coefficients n <= X.
  std::vector<std::pair<long, CycloNumber>> dterms;
  for (const auto& [k, c] : D.terms()) {
    long d = key_value(k);
    if (d <= X) dterms.emplace_back(d, c);
  }
  std::vector<CycloNumber> lam = h.table(X);
  DirichletCharacter star = chi.primitive();
  // Both sums are periodic in n, so evaluate them once per residue.
  std::vector<CycloNumber> c_star, c_full;
  for (long a = 0; a < star.modulus(); ++a) c_star.push_back(c_chi_direct(star, a));
  for (long a = 0; a < chi.modulus(); ++a) c_full.push_back(c_chi_direct(chi, a));
  std::vector<CycloNumber> base(static_cast<std::size_t>(X) + 1);
  for (long m = 1; m <= X; ++m) {
    const CycloNumber& c = c_star[static_cast<std::size_t>(m % star.modulus())];
    if (lam[static_cast<std::size_t>(m)].is_zero() || c.is_zero()) continue;
    base[static_cast<std::size_t>(m)] = lam[static_cast<std::size_t>(m)] * c;
  }
  for (long n = 1; n <= X; ++n) {
    CycloNumber want;
    const CycloNumber& c = c_full[static_cast<std::size_t>(n % chi.modulus())];
    if (!lam[static_cast<std::size_t>(n)].is_zero() && !c.is_zero()) want = lam[static_cast<std::size_t>(n)] * c;
    CycloNumber got;
    for (const auto& [d, c] : dterms) {
      if (n % d != 0) continue;
      const CycloNumber& b = base[static_cast<std::size_t>(n / d)];
      if (!b.is_zero()) got += c * b;
    }
    if (got != want) return false;
  }
  return true;
}

OrthogonalityReport orthogonality_check(long Q) {
  if (Q < 1) throw DomainError("orthogonality_check: Q must be positive");
  OrthogonalityReport rep;
  rep.Q = Q;
  const long L = arith::lcm(Q, arith::carmichael(Q));
  using Sparse = std::vector<std::pair<long, std::int64_t>>;
  // funcs[f][n] is c_chi(n) in Z[C_L].
  std::vector<std::vector<Sparse>> funcs;
  for (long d : arith::divisors(Q))
    for (const auto& chi : DirichletCharacter::all(d)) {
      std::vector<Sparse> f(static_cast<std::size_t>(Q));
      for (long n = 0; n < Q; ++n) {
        std::map<long, std::int64_t> acc;
        for (long a = 0; a < d; ++a) {
          long e = chi.exponent(a);
          if (e < 0) continue;
          acc[arith::mod(e * (L / chi.order()) + (a * n % d) * (L / d), L)] += 1;
        }
        for (auto [k, v] : acc) f[static_cast<std::size_t>(n)].emplace_back(k, v);
      }
      funcs.push_back(std::move(f));
    }
  rep.functions = funcs.size();
  rep.ok = rep.functions == static_cast<std::size_t>(Q);
  for (std::size_t i = 0; i < funcs.size(); ++i)
    for (std::size_t j = i; j < funcs.size(); ++j) {
      RootSum acc(L);
      for (long n = 0; n < Q; ++n)
        for (auto [k1, v1] : funcs[i][static_cast<std::size_t>(n)])
          for (auto [k2, v2] : funcs[j][static_cast<std::size_t>(n)]) acc.add(k1 - k2, v1 * v2);
      bool zero = acc.value().is_zero();
      ++rep.pairs_checked;
      if (zero != (i != j)) rep.ok = false;
    }
  return rep;
}

}  // namespace gammagen
