#include <random>

#include "doctest.h"
#include "gammagen/arith.hpp"
#include "gammagen/error.hpp"
#include "gammagen/twists.hpp"

using namespace gammagen;

namespace {

const DirichletCharacter& quadratic5() {
  static const DirichletCharacter chi = DirichletCharacter::from_exponents(5, {2});
  return chi;
}

}  // namespace

TEST_CASE("unit groups and character tables") {
  for (long q = 1; q <= 80; ++q) {
    auto G = unit_group(q);
    long prod = 1;
    for (long o : G.orders) prod *= o;
    CHECK(prod == arith::euler_phi(q));
    auto chars = DirichletCharacter::all(q);
    CHECK(static_cast<long>(chars.size()) == arith::euler_phi(q));
    for (std::size_t i = 1; i < chars.size(); ++i) CHECK_FALSE(chars[i] == chars[0]);
  }
  auto chi = quadratic5();
  CHECK(chi.order() == 2);
  CHECK(chi.value(4) == CycloNumber(1));
  CHECK(chi.value(2) == CycloNumber(-1));
  CHECK(chi.value(10).is_zero());
  CHECK(chi.is_primitive());
}

TEST_CASE("characters are completely multiplicative") {
  for (long q : {8L, 15L, 24L, 49L}) {
    for (const auto& chi : DirichletCharacter::all(q))
      for (long a = 0; a < q; ++a)
        for (long b = 0; b < q; ++b) CHECK(chi.value(a * b) == chi.value(a) * chi.value(b));
  }
}

TEST_CASE("conductor decomposition") {
  for (long q = 1; q <= 72; ++q)
    for (const auto& chi : DirichletCharacter::all(q)) {
      auto star = chi.primitive();
      CHECK(star.is_primitive());
      CHECK(star.modulus() == chi.conductor());
      CHECK(q == chi.conductor() * chi.q0() * chi.q2());
      for (long p : arith::prime_divisors(chi.q0())) CHECK(chi.conductor() % p != 0);
      for (long n = 0; n < q; ++n)
        if (arith::gcd(n, q) == 1) CHECK(chi.value(n) == star.value(n));
    }
  auto chi = DirichletCharacter::trivial(12);
  CHECK(chi.conductor() == 1);
  CHECK(chi.q0() == 6);
  CHECK(chi.q2() == 2);
}

TEST_CASE("ramanujan sums") {
  CHECK(ramanujan_c(4, 2) == -2);
  for (long n = 0; n < 20; ++n) CHECK(ramanujan_c(1, n) == 1);
  for (long q : {2L, 3L, 5L, 7L, 101L})
    for (long n = 1; n < 30; ++n)
      if (n % q != 0) CHECK(ramanujan_c(q, n) == -1);
  for (long q = 1; q <= 60; ++q)
    for (long n = -3; n <= 60; ++n) REQUIRE(ramanujan_c(q, n) == ramanujan_c_direct(q, n));
  for (long a = 1; a <= 12; ++a)
    for (long b = 1; b <= 12; ++b)
      if (arith::gcd(a, b) == 1)
        for (long n = 1; n <= 30; ++n) CHECK(ramanujan_c(a * b, n) == ramanujan_c(a, n) * ramanujan_c(b, n));
}

TEST_CASE("gauss sums") {
  CHECK(gauss_sum(DirichletCharacter::trivial(1)) == CycloNumber(1));
  auto tau = gauss_sum(quadratic5());
  CHECK(tau * tau.conj() == CycloNumber(5));
  CHECK(tau * tau == CycloNumber(5));
  CHECK_THROWS_AS(gauss_sum(DirichletCharacter::trivial(4)), PreconditionError);
  for (long q : {5L, 7L, 8L, 9L, 13L}) {
    for (const auto& chi : DirichletCharacter::all(q)) {
      if (!chi.is_primitive()) continue;
      auto t = gauss_sum(chi), tb = gauss_sum(chi.conj());
      CHECK(t * t.conj() == CycloNumber(q));
      // tau(conj chi) / tau(chi) = tau(conj chi)^2 chi(-1) / q
      CHECK(tb * CycloNumber(q) == tb * tb * chi.value(-1) * t);
    }
  }
}

TEST_CASE("c_chi fast path matches the direct sum") {
  for (long q = 1; q <= 36; ++q)
    for (const auto& chi : DirichletCharacter::all(q)) {
      CChi fast(chi);
      for (long n = -2; n <= 2 * q; ++n) REQUIRE(fast(n) == c_chi_direct(chi, n));
    }
  for (long q = 1; q <= 20; ++q) {
    auto triv = DirichletCharacter::trivial(q);
    for (long n = 0; n <= 20; ++n) CHECK(c_chi_direct(triv, n) == CycloNumber(Rational(ramanujan_c(q, n))));
  }
  for (const auto& chi : DirichletCharacter::all(7)) {
    if (!chi.is_primitive()) continue;
    auto tau = gauss_sum(chi);
    for (long n = 0; n <= 14; ++n) CHECK(c_chi(chi, n) == tau * chi.conj().value(n));
  }
  auto chi = DirichletCharacter::trivial(4);
  CHECK(chi.q2() == 2);
  CHECK(c_chi(chi, 3).is_zero());
}

TEST_CASE("hecke coefficients") {
  std::mt19937_64 rng(41);
  auto xi = DirichletCharacter::from_exponents(5, {1});
  auto h = HeckeCoefficients::random(5, xi, 200, rng);
  CHECK(h.coefficient(1) == CycloNumber(1));
  CHECK(h.coefficient(4) == h.coefficient(2) * h.coefficient(2) - xi.value(2));
  CHECK(h.coefficient(6) == h.coefficient(2) * h.coefficient(3));
  CHECK(h.coefficient(25) == h.bad.at(25));
  for (long p : {2L, 3L, 7L})
    for (int j = 1; j + 1 <= 5 && h.prime_power(p, 1).conductor() > 0; ++j) {
      long pj1 = 1;
      for (int i = 0; i <= j; ++i) pj1 *= p;
      if (pj1 > h.bound) break;
      CHECK(h.prime_power(p, j + 1) + xi.value(p) * h.prime_power(p, j - 1) == h.prime_power(p, 1) * h.prime_power(p, j));
    }
  auto t = h.table(200);
  for (long n = 1; n <= 200; ++n) CHECK(t[static_cast<std::size_t>(n)] == h.coefficient(n));
  CHECK_THROWS_AS(h.coefficient(201), PreconditionError);

  auto back = HeckeCoefficients::from_json(h.to_json());
  CHECK(back.xi == h.xi);
  CHECK(back.coefficient(120) == h.coefficient(120));
  CHECK_THROWS_AS(HeckeCoefficients::from_json("{\"N\": 5, \"lambda\": {\"5\": \"1\"}}"), ParseError);
  CHECK_THROWS_AS(HeckeCoefficients::from_json("not json"), ParseError);
}

TEST_CASE("dirichlet polynomials") {
  using Key = DirichletPolynomial::Key;
  auto a = DirichletPolynomial::monomial(Key{{2, 1}}, CycloNumber(3));
  auto b = DirichletPolynomial::constant(CycloNumber(-1));
  auto c = a + b;
  CHECK(c.terms().size() == 2);
  CHECK((c + DirichletPolynomial::constant(1)).terms().size() == 1);
  CHECK(c.reflect().reflect() == c);
  CHECK(a.reflect() == DirichletPolynomial::monomial(Key{{2, -1}}, CycloNumber(Rational(3, 2))));
  CHECK(DirichletPolynomial::monomial(Key{{3, 0}}, CycloNumber(1)) == DirichletPolynomial::constant(1));
}

TEST_CASE("build_D closed form") {
  std::mt19937_64 rng(43);
  auto h = HeckeCoefficients::random(1, DirichletCharacter::trivial(1), 400, rng);
  using Key = DirichletPolynomial::Key;
  // Primitive character: D = 1.
  CHECK(build_D(h, quadratic5()) == DirichletPolynomial::constant(1));
  // Trivial character mod p.
  for (long p : {2L, 3L, 7L}) {
    DirichletPolynomial want = DirichletPolynomial::monomial(Key{{p, 1}}, h.good.at(p) * CycloNumber(p)) +
                               DirichletPolynomial::constant(-1) +
                               DirichletPolynomial::monomial(Key{{p, 2}}, CycloNumber(-p));
    CHECK(build_D(h, DirichletCharacter::trivial(p)) == want);
  }
  // q = p q* with p | q*.
  auto chi25 = DirichletCharacter::from_exponents(25, {5});
  REQUIRE(chi25.conductor() == 5);
  CHECK(build_D(h, chi25) == DirichletPolynomial::monomial(Key{{5, 1}}, h.good.at(5) * CycloNumber(5)));

  CHECK_THROWS_AS(build_D(HeckeCoefficients::random(3, DirichletCharacter::trivial(3), 50, rng),
                          DirichletCharacter::trivial(6)),
                  PreconditionError);
}

TEST_CASE("functional equation and oracle agree") {
  std::mt19937_64 rng(47);
  const long levels[] = {1, 3, 4, 5, 7};
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    long N = levels[trial % 5];
    auto xis = DirichletCharacter::all(N);
    auto xi = xis[std::uniform_int_distribution<std::size_t>(0, xis.size() - 1)(rng)];
    long q;
    do q = std::uniform_int_distribution<long>(1, 40)(rng);
    while (arith::gcd(q, N) != 1);
    auto chars = DirichletCharacter::all(q);
    auto chi = chars[std::uniform_int_distribution<std::size_t>(0, chars.size() - 1)(rng)];
    auto h = HeckeCoefficients::random(N, xi, 200, rng);
    auto Df = build_D(h, chi);
    auto Dg = build_D(h.dual(), chi.conj());
    CHECK(check_fe(Df, Dg, q, chi.conductor(), xi));
    CHECK(check_fe_numeric(Df, Dg, q, chi.conductor(), xi) < 1e-20);
    CHECK(oracle_twist_ratio(h, chi, 200, Df));
    for (const auto& [k, c] : Df.terms())
      for (auto [p, e] : k) {
        CHECK(e >= 0);
        CHECK(e <= arith::valuation(q, p) + 1);
      }
    ++checked;
  }
  CHECK(checked == 30);
}

TEST_CASE("mutated D fails the oracle and the functional equation") {
  std::mt19937_64 rng(53);
  auto h = HeckeCoefficients::random(1, DirichletCharacter::trivial(1), 300, rng);
  auto chi = DirichletCharacter::trivial(3);
  CHECK(oracle_twist_ratio(h, chi, 300));
  auto D = build_D(h, chi) + DirichletPolynomial::monomial({{3, 1}}, CycloNumber(Rational(1, 7)));
  CHECK_FALSE(oracle_twist_ratio(h, chi, 300, D));
  CHECK_FALSE(check_fe(D, build_D(h.dual(), chi.conj()), 3, 1, h.xi));
  CHECK(oracle_twist_ratio(h, DirichletCharacter::trivial(1), 10));
  CHECK_THROWS_AS(oracle_twist_ratio(h, chi, 0), PreconditionError);
}

TEST_CASE("orthogonality") {
  auto r1 = orthogonality_check(1);
  CHECK(r1.ok);
  CHECK(r1.functions == 1);
  auto r12 = orthogonality_check(12);
  CHECK(r12.ok);
  CHECK(r12.functions == 12);
  for (long p : {5L, 7L}) CHECK(orthogonality_check(p).functions == static_cast<std::size_t>(p));
  for (long Q = 1; Q <= 24; ++Q) CHECK(orthogonality_check(Q).ok);
}
