#include <random>
#include <set>

#include "doctest.h"
#include "gammagen/error.hpp"
#include "gammagen/words.hpp"

using namespace gammagen;

TEST_CASE("word text and evaluation") {
  CHECK(format_word(parse_word("TtWw")) == "TtWw");
  CHECK_THROWS_AS(parse_word("TX"), ParseError);
  CHECK(eval_word({}, 5) == identity());
  CHECK(is_reduced(parse_word("TTWtw")));
  CHECK_FALSE(is_reduced(parse_word("TWwT")));
  Word w = parse_word("TWwwtT");
  CHECK(eval_word(w, 7) == to_rational(ieval_word(w, 7)));
  CHECK(eval_word(inverse_word(w), 7) == inv(eval_word(w, 7)));
}

TEST_CASE("(W^-1 T)^12 = I for N <= 3") {
  Word w;
  for (int i = 0; i < 12; ++i) {
    w.push_back(Letter::Winv);
    w.push_back(Letter::T);
  }
  for (long N : {1, 2, 3}) CHECK(eval_word(w, N) == identity());
  CHECK(eval_word(w, 4) != identity());
}

TEST_CASE("S,T words") {
  CHECK(eval_stword(parse_stword("StSSS")) == Mat2(1, 0, 1, 1));
  CHECK(matrix_to_stword(mat_T()) == parse_stword("T"));
  CHECK(matrix_to_stword(neg_identity()) == parse_stword("SS"));
  CHECK(matrix_to_stword(identity()).empty());
  CHECK(eval_stword(matrix_to_stword(Mat2(2, -1, 5, -2))) == Mat2(2, -1, 5, -2));
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> ent(-1000000, 1000000);
  int done = 0;
  while (done < 300) {
    long a = ent(rng), c = ent(rng);
    if (std::gcd(a, c) != 1) continue;
    Integer g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), Integer(a).get_mpz_t(), Integer(c).get_mpz_t());
    Mat2 M(a, -y, c, x);  // a x + c y = 1
    REQUIRE(M.det() == 1);
    CHECK(eval_stword(matrix_to_stword(M)) == M);
    ++done;
  }
}

TEST_CASE("height-one ball") {
  for (long N = 4; N <= 9; ++N) {
    TWBall ball = enumerate_tw(N, 1);
    std::set<std::string> got;
    for (std::size_t i = 0; i < ball.size(); ++i) got.insert(format_word(ball.word(i)));
    CHECK(got == std::set<std::string>{"", "T", "t", "W", "w"});
  }
  // Below level 4 height one holds more than the generators, e.g. W T^-1.
  TWBall small = enumerate_tw(2, 1, 6);
  std::set<std::string> got;
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small.within_bound(i)) got.insert(format_word(small.word(i)));
  CHECK(got.count("Wt") == 1);
  CHECK(got.size() > 5);
  CHECK_THROWS_AS(enumerate_tw(3, 10), DomainError);
}

TEST_CASE("enumeration is deterministic and matches its matrices") {
  TWBall a = enumerate_tw(5, 40), b = enumerate_tw(5, 40);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.matrix(i) == b.matrix(i));
    Word w = a.word(i);
    CHECK(is_reduced(w));
    CHECK(ieval_word(w, 5) == a.matrix(i));
    CHECK(iheight(a.matrix(i), 5) <= 40);
  }
}

TEST_CASE("loggen decomposition") {
  auto check = [](long N, const Mat2& M) {
    LogGenFactorization f = loggen_decompose(N, M);
    CHECK(eval_factorization(f, N) == M);
    Integer A = abs(M.a().get_num());
    int lg = 0;
    while (Integer(1) << (lg + 1) <= A) ++lg;
    CHECK(f.gamma_count <= lg);
    return f;
  };
  CHECK(check(7, identity()).factors.empty());
  CHECK(check(7, identity()).sign == 1);
  auto f = check(7, -power(mat_T(), 5));
  CHECK(f.gamma_count == 0);
  CHECK(f.sign == -1);
  std::mt19937_64 rng(3);
  for (long N : {5, 7, 11, 13}) {
    std::uniform_int_distribution<long> ent(-1024, 1024), cd(-50, 50);
    int done = 0;
    while (done < 200) {
      long A = ent(rng), C = cd(rng);
      if (A == 0 || std::gcd(A, C * N) != 1) continue;
      Integer g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), Integer(A).get_mpz_t(),
                 Integer(C * N).get_mpz_t());
      check(N, Mat2(A, -y, C * N, x));
      ++done;
    }
  }
  CHECK_THROWS_AS(loggen_decompose(6, identity()), DomainError);
  CHECK_THROWS_AS(loggen_decompose(7, mat_S()), DomainError);
}
