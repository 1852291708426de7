#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "gammagen/error.hpp"
#include "gammagen/exactalg.hpp"

using namespace gammagen;

namespace {

ExpSumMatrix random_spec(std::mt19937_64& rng, int max_h, long max_q, long max_m) {
  return random_exp_sum_matrix(rng, max_h, max_q, max_m);
}

CycloMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> coef(-3, 3);
  const long conductors[] = {1, 3, 4, 5, 12, 20, 60};
  std::uniform_int_distribution<std::size_t> cond(0, 6);
  CycloMatrix a(n, std::vector<CycloNumber>(n));
  for (auto& row : a)
    for (auto& x : row) {
      long M = conductors[cond(rng)];
      std::vector<Rational> c(static_cast<std::size_t>(M));
      for (auto& v : c) v = coef(rng);
      x = CycloNumber::from_powers(M, c);
    }
  return a;
}

// Neighbourhood size of a row set given as a bitmask.
std::size_t m_of(const Pattern& a, unsigned mask) {
  std::size_t cnt = 0;
  for (std::size_t c = 0; c < a.size(); ++c)
    for (std::size_t r = 0; r < a.size(); ++r)
      if ((mask >> r & 1u) && a[r][c]) {
        ++cnt;
        break;
      }
  return cnt;
}

Pattern random_pattern(std::mt19937_64& rng, std::size_t n, double density) {
  std::bernoulli_distribution bit(density);
  std::uniform_int_distribution<std::size_t> col(0, n - 1);
  Pattern a(n, std::vector<bool>(n));
  for (auto& row : a) {
    for (std::size_t c = 0; c < n; ++c) row[c] = bit(rng);
    row[col(rng)] = true;
  }
  return a;
}

}  // namespace

TEST_CASE("exact determinant basics") {
  CycloMatrix id(3, std::vector<CycloNumber>(3));
  for (int i = 0; i < 3; ++i) id[i][i] = 1;
  CHECK(exact_det(id) == CycloNumber(1));
  CycloNumber z = CycloNumber::zeta(5);
  CHECK(exact_det({{z, 1}, {z, 1}}).is_zero());
  CHECK(exact_det({{z, CycloNumber(2)}, {CycloNumber(3), z}}) == z * z - CycloNumber(6));
  CHECK(exact_det({}) == CycloNumber(1));
}

TEST_CASE("exact determinant matches 50-digit elimination") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_matrix(rng, 4);
    Complex50 want = numeric_det50(a);
    Complex50 got = exact_det(a).to_complex50();
    CHECK(abs(got - want) < 1e-20);
  }
}

TEST_CASE("determinant under row and column permutations") {
  std::mt19937_64 rng(23);
  auto a = random_matrix(rng, 4);
  CycloNumber d = exact_det(a);
  std::vector<std::size_t> p{2, 0, 3, 1}, q{1, 0, 2, 3};
  CycloMatrix b(4, std::vector<CycloNumber>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) b[i][j] = a[p[i]][q[j]];
  int sign = permutation_sign(p) * permutation_sign(q);
  CHECK(exact_det(b) == (sign > 0 ? d : -d));
}

TEST_CASE("key determinant examples") {
  ExpSumMatrix s{1, 1, {5}, {{{1, 2, 3, 4}}}};
  auto r = key_det_nonzero(s);
  CHECK(r.nonzero);
  CHECK(r.det == CycloNumber(-1));

  ExpSumMatrix one{3, 2, {7}, {{{4}}}};
  auto r1 = key_det_nonzero(one);
  CHECK(r1.nonzero);
  CHECK(r1.det.pow(21) == CycloNumber(1));
}

TEST_CASE("key determinant preconditions") {
  CHECK_THROWS_AS(key_det_nonzero({1, 1, {5}, {{{}}}}), PreconditionError);
  CHECK_THROWS_AS(key_det_nonzero({5, 1, {5}, {{{1}}}}), PreconditionError);
  CHECK_THROWS_AS(key_det_nonzero({1, 1, {5, 5}, {{{1}, {2}}, {{2}, {1}}}}), PreconditionError);
  CHECK_THROWS_AS(key_det_nonzero({1, 1, {5, 7}, {{{1}, {2}}, {{1}, {1}}}}), PreconditionError);
  CHECK_THROWS_AS(key_det_nonzero({1, 1, {4}, {{{1}}}}), PreconditionError);
  CHECK_THROWS_AS(key_det_nonzero({1, 1, {5}, {{{5}}}}), PreconditionError);
}

TEST_CASE("key determinant is nonzero on random instances") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 500; ++trial) {
    auto s = random_spec(rng, 2, 7, 1);
    REQUIRE(key_det_nonzero(s).nonzero);
  }
  for (int trial = 0; trial < 60; ++trial) {
    auto s = random_spec(rng, 3, 13, 6);
    auto r = key_det_nonzero(s);
    REQUIRE(r.nonzero);
    if (trial < 10) CHECK(r.det == exact_det(s.matrix()));
  }
}

TEST_CASE("hall block form small cases") {
  Pattern id{{true, false, false}, {false, true, false}, {false, false, true}};
  auto hb = hall_block_form(id);
  CHECK(hb.m == 3);
  CHECK(hb.row_perm == std::vector<std::size_t>{0, 1, 2});
  CHECK(hb.col_perm == std::vector<std::size_t>{0, 1, 2});

  auto sw = hall_block_form({{false, true}, {true, false}});
  CHECK(sw.m == 2);
  CHECK(sw.col_perm == std::vector<std::size_t>{1, 0});

  auto col = hall_block_form({{true, false}, {true, false}});
  CHECK(col.m == 1);
  CHECK(check_block_form({{true, false}, {true, false}}, col));

  CHECK_THROWS_AS(hall_block_form({{true, true}, {false, false}}), PreconditionError);
}

TEST_CASE("hall block form over all 2x2 and 3x3 patterns") {
  for (std::size_t n : {2u, 3u}) {
    unsigned cells = static_cast<unsigned>(n * n);
    for (unsigned bits = 0; bits < (1u << cells); ++bits) {
      Pattern a(n, std::vector<bool>(n));
      bool zero_row = false;
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a[r][c] = bits >> (r * n + c) & 1u;
        zero_row |= std::none_of(a[r].begin(), a[r].end(), [](bool x) { return x; });
      }
      if (zero_row) continue;
      auto hb = hall_block_form(a);
      CHECK(check_block_form(a, hb));
    }
  }
}

TEST_CASE("hall block set matches the brute-force minimal tight set") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 9)(rng);
    auto a = random_pattern(rng, n, 0.2);
    auto hb = hall_block_form(a);
    REQUIRE(check_block_form(a, hb));
    unsigned mask = 0;
    for (std::size_t i = 0; i < hb.m; ++i) mask |= 1u << hb.row_perm[i];
    CHECK(m_of(a, mask) == hb.m);
    bool perfect = hb.m == n;
    if (perfect) continue;
    // No proper nonempty subset of the block rows is itself tight.
    for (unsigned sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask)
      CHECK(m_of(a, sub) > static_cast<std::size_t>(__builtin_popcount(sub)));
  }
}

TEST_CASE("hall block form structural audit") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
    double density = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
    auto a = random_pattern(rng, n, density);
    REQUIRE(check_block_form(a, hall_block_form(a)));
  }
}
