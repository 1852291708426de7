#pragma once

// Dirichlet characters, Ramanujan sums, character-weighted exponential sums,
// Hecke coefficient data and the Dirichlet polynomial D_{f,chi}.

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gammagen/cyclo.hpp"

namespace gammagen {

/// (Z/q)^x as a product of cyclic groups: gens[i] has order orders[i].
struct UnitGroup {
  long q = 1;
  std::vector<long> gens;
  std::vector<long> orders;
};

UnitGroup unit_group(long q);

class DirichletCharacter {
 public:
  /// Trivial character mod 1.
  DirichletCharacter() = default;

  static DirichletCharacter trivial(long q);
  /// chi(gens[i]) = e(k[i] / orders[i]).
  static DirichletCharacter from_exponents(long q, const std::vector<long>& k);
  /// All phi(q) characters mod q, in lexicographic order of exponents.
  static std::vector<DirichletCharacter> all(long q);

  long modulus() const { return q_; }
  long order() const { return order_; }
  const std::vector<long>& exponents() const { return k_; }
  /// chi(n) = e(exponent(n) / order()), or -1 when gcd(n, q) > 1.
  long exponent(long n) const;
  CycloNumber value(long n) const;
  std::vector<CycloNumber> values() const;

  bool is_trivial() const { return order_ == 1; }
  bool is_primitive() const { return conductor() == q_; }
  long conductor() const { return conductor_; }
  /// The primitive character mod conductor() inducing this one.
  DirichletCharacter primitive() const;
  DirichletCharacter conj() const;
  /// Product of the primes dividing q but not the conductor.
  long q0() const;
  /// q / (conductor * q0).
  long q2() const;
  /// chi(-1) as +1 or -1.
  int parity() const;
  std::string label() const;

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.q_ == b.q_ && a.order_ == b.order_ && a.exp_ == b.exp_;
  }

 private:
  static DirichletCharacter from_table(long q, std::vector<long> exps, long order);
  void finish();

  long q_ = 1;
  long order_ = 1;
  long conductor_ = 1;
  std::vector<long> exp_{0};
  std::vector<long> k_;
};

/// c_q(n) by Hoelder's formula.
Integer ramanujan_c(long q, long n);
/// c_q(n) as an exponential sum.
Integer ramanujan_c_direct(long q, long n);

/// sum_{a mod q, (a,q)=1} chi(a) e(a n / q), summed term by term.
CycloNumber c_chi_direct(const DirichletCharacter& chi, long n);
/// Gauss sum of a primitive character; throws PreconditionError otherwise.
CycloNumber gauss_sum(const DirichletCharacter& chi);

/// c_chi through the conductor decomposition; caches the Gauss sum.
class CChi {
 public:
  explicit CChi(const DirichletCharacter& chi);
  CycloNumber operator()(long n) const;
  const DirichletCharacter& character() const { return chi_; }
  const CycloNumber& tau() const { return tau_; }

 private:
  DirichletCharacter chi_, star_;
  long q0_, q2_;
  CycloNumber tau_;
  RootSum tau_sum_;
};

CycloNumber c_chi(const DirichletCharacter& chi, long n);

/// lambda_n data: lambda_p at primes p not dividing N, lambda_{p^j} stored
/// directly at primes p dividing N.
struct HeckeCoefficients {
  long N = 1;
  DirichletCharacter xi;
  long bound = 1;
  std::map<long, CycloNumber> good;
  std::map<long, CycloNumber> bad;

  /// Throws PreconditionError when n > bound or data is missing.
  CycloNumber coefficient(long n) const;
  CycloNumber prime_power(long p, int j) const;
  /// lambda_1, ..., lambda_X (index 0 unused).
  std::vector<CycloNumber> table(long X) const;
  /// Dual data: nebentypus conj(xi), lambda_p -> conj(xi(p)) lambda_p at good p.
  HeckeCoefficients dual() const;

  static HeckeCoefficients random(long N, const DirichletCharacter& xi, long bound, std::mt19937_64& rng);
  static HeckeCoefficients from_json(const std::string& text);
  std::string to_json() const;
};

/// Finite sum of c * prod_p u_p^{e_p} with u_p = p^{-s}.
class DirichletPolynomial {
 public:
  using Key = std::map<long, int>;

  DirichletPolynomial() = default;
  static DirichletPolynomial constant(const CycloNumber& c);
  static DirichletPolynomial monomial(const Key& key, const CycloNumber& c);

  void add_term(const Key& key, const CycloNumber& c);
  const std::map<Key, CycloNumber>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Value of s -> 1 - s: u_p^e becomes p^{-e} u_p^{-e}.
  DirichletPolynomial reflect() const;
  Complex50 evaluate(const Complex50& s) const;
  std::vector<long> primes() const;
  std::string str() const;

  DirichletPolynomial& operator+=(const DirichletPolynomial& o);
  friend DirichletPolynomial operator+(DirichletPolynomial a, const DirichletPolynomial& b) { return a += b; }
  friend DirichletPolynomial operator*(const DirichletPolynomial& a, const DirichletPolynomial& b);
  friend DirichletPolynomial operator*(const CycloNumber& c, const DirichletPolynomial& a);
  friend bool operator==(const DirichletPolynomial& a, const DirichletPolynomial& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Key, CycloNumber> terms_;
};

/// n = prod p^{e_p} for a key with nonnegative exponents.
long key_value(const DirichletPolynomial::Key& key);

/// Closed form of Lambda_f(s, c_chi) / Lambda_f(s, c_{chi*}).
DirichletPolynomial build_D(const HeckeCoefficients& h, const DirichletCharacter& chi);

/// Exact test of D_f(s) = (q/q*)^{1-2s} xi(q/q*) D_g(1-s).
bool check_fe(const DirichletPolynomial& Df, const DirichletPolynomial& Dg, long q, long q_star,
              const DirichletCharacter& xi);
/// Largest |LHS - RHS| of the same identity at three fixed complex points.
double check_fe_numeric(const DirichletPolynomial& Df, const DirichletPolynomial& Dg, long q, long q_star,
                        const DirichletCharacter& xi);

/// Compares D * sum lambda_n c_{chi*}(n) n^{-s} with sum lambda_n c_chi(n) n^{-s}
/// coefficientwise for n <= X.
bool oracle_twist_ratio(const HeckeCoefficients& h, const DirichletCharacter& chi, long X);
bool oracle_twist_ratio(const HeckeCoefficients& h, const DirichletCharacter& chi, long X,
                        const DirichletPolynomial& D);

struct OrthogonalityReport {
  long Q = 1;
  std::size_t functions = 0;
  std::size_t pairs_checked = 0;
  bool ok = false;
};

/// The c_chi for chi of modulus dividing Q are pairwise orthogonal on Z/Q and number Q.
OrthogonalityReport orthogonality_check(long Q);

}  // namespace gammagen
