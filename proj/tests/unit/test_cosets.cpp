#include <set>

#include "doctest.h"
#include "gammagen/arith.hpp"
#include "gammagen/cosets.hpp"
#include "gammagen/generator_table.hpp"

using namespace gammagen;

namespace {

// Orbit of the bottom row (0, 1) under right multiplication by S and T.
std::size_t brute_gamma1_orbit(long N) {
  std::set<std::pair<long, long>> seen{{0, 1 % N}};
  std::vector<std::pair<long, long>> stack{{0, 1 % N}};
  while (!stack.empty()) {
    auto [c, d] = stack.back();
    stack.pop_back();
    for (auto nx : {std::make_pair(arith::mod(d, N), arith::mod(-c, N)),
                    std::make_pair(c, arith::mod(c + d, N))})
      if (seen.insert(nx).second) stack.push_back(nx);
  }
  return seen.size();
}

// Number of Gamma0(N) cosets: points of P^1(Z/N).
std::int64_t brute_gamma0_index(long N) {
  std::set<std::pair<long, long>> pts;
  for (long c = 0; c < N; ++c)
    for (long d = 0; d < N; ++d) {
      if (arith::gcd(arith::gcd(c, d), N) != 1) continue;
      std::pair<long, long> best{N, N};
      for (long u = 1; u <= N; ++u)
        if (arith::gcd(u, N) == 1) best = std::min(best, {(u * c) % N, (u * d) % N});
      pts.insert(best);
    }
  return static_cast<std::int64_t>(pts.size());
}

}  // namespace

TEST_CASE("Todd-Coxeter small cases") {
  CHECK(todd_coxeter({parse_stword("S"), parse_stword("T")}).index == 1);
  CHECK(todd_coxeter({}, {.max_cosets = 1000}).status == TCResult::Status::Overflow);
  // <T> has infinite index.
  CHECK_FALSE(todd_coxeter({parse_stword("T")}, {.max_cosets = 5000}).complete());
  // <S> has infinite index too, <S, T^2 ...>
  TCResult g02 = subgroup_index({mat_T(), mat_W(2), neg_identity()});
  REQUIRE(g02.complete());
  CHECK(g02.index == 3);
  CHECK(g02.audit_ok);
  TCResult g5 = subgroup_index(row_matrices(*find_small_level(5)));
  CHECK(g5.index == 6);
  CHECK(g5.audit_ok);
}

TEST_CASE("both strategies agree") {
  for (const auto& row : small_level_table()) {
    auto gens = row_matrices(row);
    TCResult f = subgroup_index(gens, {.strategy = TCStrategy::Felsch});
    TCResult h = subgroup_index(gens, {.strategy = TCStrategy::HLT});
    REQUIRE(f.complete());
    REQUIRE(h.complete());
    CHECK(f.index == h.index);
    CHECK(f.index == index_gamma0(row.N));
    CHECK(f.audit_ok);
    CHECK(h.audit_ok);
  }
}

TEST_CASE("adding a subgroup element keeps the index") {
  auto gens = row_matrices(*find_small_level(9));
  auto base = subgroup_index(gens);
  gens.push_back(mul(gens[1], mul(gens[3], gens[2])));
  CHECK(subgroup_index(gens).index == base.index);
}

TEST_CASE("index formulas") {
  for (long N = 1; N <= 30; ++N) CHECK(index_gamma0(N) == brute_gamma0_index(N));
  CHECK(index_gamma0(6) == 12);
  CHECK(index_gamma_q(5, 2) == 6);
  CHECK(index_gamma_q(5, 6) == 24);
  CHECK(index_gamma_q(7, 1) == index_gamma0(7) * 6);
}

TEST_CASE("Gamma1 coset action") {
  CHECK(gamma1_coset_action(1).labels.size() == 1);
  for (long N = 1; N <= 16; ++N) {
    auto act = gamma1_coset_action(N);
    CHECK(act.labels.size() == brute_gamma1_orbit(N));
    CHECK(static_cast<std::int64_t>(act.labels.size()) == index_gamma1(N));
    for (std::size_t i = 0; i < act.labels.size(); ++i) {
      std::size_t j = i;
      for (int k = 0; k < 4; ++k) j = act.perm_S[j];
      CHECK(j == i);
    }
  }
  CHECK(gamma1_coset_action(5).labels.size() == 24);
}

TEST_CASE("Schreier generators of Gamma1(N)") {
  for (long N : {1, 2, 3, 5, 7, 8}) {
    auto gens = schreier_generators(N);
    for (const auto& g : gens) CHECK(in_gamma1(g, N));
    auto r = subgroup_index(gens);
    REQUIRE(r.complete());
    CHECK(r.index == index_gamma1(N));
  }
  auto unpruned = schreier_generators(5, {.prune = false});
  CHECK(subgroup_index(unpruned).index == 24);
}
