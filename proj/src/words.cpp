#include "gammagen/words.hpp"

#include <algorithm>
#include <unordered_set>

#include "gammagen/arith.hpp"
#include "gammagen/error.hpp"

namespace gammagen {

Letter inverse(Letter x) { return static_cast<Letter>(static_cast<std::uint8_t>(x) ^ 1u); }

char letter_char(Letter x) {
  static constexpr char kChars[] = {'T', 't', 'W', 'w'};
  return kChars[static_cast<int>(x)];
}

Word parse_word(const std::string& text) {
  Word w;
  w.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case 'T': w.push_back(Letter::T); break;
      case 't': w.push_back(Letter::Tinv); break;
      case 'W': w.push_back(Letter::W); break;
      case 'w': w.push_back(Letter::Winv); break;
      default: throw ParseError(std::string("word: unexpected letter '") + ch + "'");
    }
  }
  return w;
}

std::string format_word(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter x : w) s.push_back(letter_char(x));
  return s;
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == inverse(w[i - 1])) return false;
  return true;
}

Word inverse_word(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (Letter& x : r) x = inverse(x);
  return r;
}

IntMat2 letter_matrix(Letter x, std::int64_t N) {
  switch (x) {
    case Letter::T: return {1, 1, 0, 1};
    case Letter::Tinv: return {1, -1, 0, 1};
    case Letter::W: return {1, 0, N, 1};
    case Letter::Winv: return {1, 0, -N, 1};
  }
  return {};
}

Mat2 eval_word(const Word& w, long N) {
  // Run-length powers keep long words cheap.
  Mat2 M;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    long k = static_cast<long>(j - i);
    switch (w[i]) {
      case Letter::T: M = mul(M, translation(k)); break;
      case Letter::Tinv: M = mul(M, translation(-k)); break;
      case Letter::W: M = mul(M, Mat2(1, 0, Rational(Integer(N) * k), 1)); break;
      case Letter::Winv: M = mul(M, Mat2(1, 0, Rational(Integer(N) * -k), 1)); break;
    }
    i = j;
  }
  return M;
}

IntMat2 ieval_word(const Word& w, std::int64_t N) {
  IntMat2 M;
  for (Letter x : w) M = imul(M, letter_matrix(x, N));
  return M;
}

STWord parse_stword(const std::string& text) {
  STWord w;
  for (char ch : text) {
    switch (ch) {
      case 'S': w.push_back(STLetter::S); break;
      case 'T': w.push_back(STLetter::T); break;
      case 't': w.push_back(STLetter::Tinv); break;
      default: throw ParseError(std::string("S,T word: unexpected letter '") + ch + "'");
    }
  }
  return w;
}

std::string format_stword(const STWord& w) {
  std::string s;
  for (STLetter x : w) s.push_back(x == STLetter::S ? 'S' : x == STLetter::T ? 'T' : 't');
  return s;
}

Mat2 eval_stword(const STWord& w) {
  Mat2 M;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    long k = static_cast<long>(j - i);
    switch (w[i]) {
      case STLetter::S: M = mul(M, power(mat_S(), k % 4)); break;
      case STLetter::T: M = mul(M, translation(k)); break;
      case STLetter::Tinv: M = mul(M, translation(-k)); break;
    }
    i = j;
  }
  return M;
}

namespace {

void append_tpower(STWord& w, const Integer& k) {
  if (!k.fits_slong_p()) throw std::overflow_error("matrix_to_stword: exponent too large");
  long n = k.get_si();
  w.insert(w.end(), static_cast<std::size_t>(n < 0 ? -n : n), n < 0 ? STLetter::Tinv : STLetter::T);
}

}  // namespace

STWord matrix_to_stword(const Mat2& M) {
  if (!in_sl2z(M)) throw DomainError("matrix_to_stword: matrix not in SL2(Z)");
  // Left-multiply by T^{-k} then S^{-1} until the lower-left entry vanishes;
  // M is the inverse of those steps applied to +-T^n.
  Integer a = M.a().get_num(), b = M.b().get_num(), c = M.c().get_num(), d = M.d().get_num();
  STWord w;
  while (c != 0) {
    Integer k;
    mpz_fdiv_q(k.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    a -= k * c;
    b -= k * d;
    append_tpower(w, k);
    w.push_back(STLetter::S);
    // S^{-1} (a b; c d) = (c d; -a -b)
    Integer na = c, nb = d;
    c = -a;
    d = -b;
    a = na;
    b = nb;
  }
  // Now (a b; 0 d) with a = d = +-1.
  if (a == -1) {
    w.push_back(STLetter::S);
    w.push_back(STLetter::S);
    b = -b;
  }
  append_tpower(w, b);
  return w;
}

Word TWBall::word(std::size_t i) const {
  Word w;
  for (std::uint32_t k = static_cast<std::uint32_t>(i); k != 0; k = parent_[k]) w.push_back(last_[k]);
  std::reverse(w.begin(), w.end());
  return w;
}

std::size_t TWBall::length(std::size_t i) const {
  std::size_t n = 0;
  for (std::uint32_t k = static_cast<std::uint32_t>(i); k != 0; k = parent_[k]) ++n;
  return n;
}

void TWBall::push(std::uint32_t parent, Letter last, const IntMat2& m) {
  parent_.push_back(parent);
  last_.push_back(last);
  mats_.push_back(m);
}

namespace {

struct IntMat2Hash {
  std::size_t operator()(const IntMat2& m) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : {m.a, m.b, m.c, m.d}) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

}  // namespace

TWBall enumerate_tw(long N, std::int64_t height_bound, int max_length) {
  if (N < 1) throw DomainError("enumerate_tw: level must be positive");
  if (height_bound < 1) throw DomainError("enumerate_tw: height bound must be at least 1");
  const bool pruned = N >= 4;
  if (!pruned && max_length < 0)
    throw DomainError("enumerate_tw: levels below 4 need a length bound");
  TWBall ball(N, height_bound);
  ball.push(TWBall::kRoot, Letter::T, IntMat2{});
  std::unordered_set<IntMat2, IntMat2Hash> seen;
  if (!pruned) seen.insert(IntMat2{});

  std::size_t begin = 0, end = 1;
  int len = 0;
  while (begin < end && (max_length < 0 || len < max_length)) {
    for (std::size_t id = begin; id < end; ++id) {
      const IntMat2 m = ball.matrix(id);
      for (int li = 0; li < 4; ++li) {
        Letter x = static_cast<Letter>(li);
        if (id != 0 && x == inverse(ball.last(id))) continue;
        IntMat2 p = imul(m, letter_matrix(x, N));
        if (pruned) {
          if (iheight(p, N) > height_bound) continue;
        } else if (!seen.insert(p).second) {
          continue;
        }
        ball.push(static_cast<std::uint32_t>(id), x, p);
      }
    }
    begin = end;
    end = ball.size();
    ++len;
  }
  return ball;
}

bool TWBall::within_bound(std::size_t i) const { return iheight(mats_[i], N_) <= bound_; }

namespace {

Integer sym_mod(const Integer& x, const Integer& m) {
  // Representative of x mod |m| with |r| <= |m|/2.
  Integer am = abs(m);
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), am.get_mpz_t());
  if (2 * r > am) r -= am;
  return r;
}

// Nearest integer to num/den, ties toward zero.
Integer round_tie_zero(const Integer& num, const Integer& den) {
  Integer n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Integer an = abs(n), q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), an.get_mpz_t(), d.get_mpz_t());
  if (2 * r > d) ++q;
  return n < 0 ? Integer(-q) : q;
}

void push_power(std::vector<LogGenFactor>& out, LogGenFactor::Kind kind, const Integer& k) {
  if (k == 0) return;
  if (!out.empty() && out.back().kind == kind) {
    out.back().value += k;
    if (out.back().value == 0) out.pop_back();
    return;
  }
  out.push_back({kind, k});
}

}  // namespace

LogGenFactorization loggen_decompose(long N, const Mat2& M) {
  if (N < 2 || !arith::is_prime(N)) throw DomainError("loggen_decompose: level must be prime");
  if (!in_gamma0(M, N)) throw DomainError("loggen_decompose: matrix not in Gamma0(N)");
  Integer A = M.a().get_num(), B = M.b().get_num(), C = M.c().get_num() / N, D = M.d().get_num();
  // Left factors L_1, L_2, ... with L_k ... L_1 M = +-T^alpha; M is the product
  // of their inverses followed by +-T^alpha.
  LogGenFactorization f;
  std::vector<LogGenFactor> inv_steps;
  while (C != 0) {
    Integer CN = C * N;
    Integer A1 = sym_mod(A, CN);
    Integer k = (A1 - A) / CN;  // T^k on the left
    bool moved = false;
    if (k != 0) {
      A += k * CN;
      B += k * D;
      push_power(inv_steps, LogGenFactor::Kind::T, -k);
      moved = true;
    }
    Integer C1 = sym_mod(C, A);
    Integer j = (C1 - C) / A;  // W^j on the left
    if (j != 0) {
      C += j * A;
      D += j * N * B;
      push_power(inv_steps, LogGenFactor::Kind::W, -j);
      moved = true;
    }
    if (C == 0 || moved) continue;
    Integer r = round_tie_zero(C * N, A);
    Mat2 g = gamma_qa(N, r, Integer(1));
    Integer ga = g.a().get_num(), gb = g.b().get_num(), gc = g.c().get_num(), gd = g.d().get_num();
    Integer nA = ga * A + gb * C * N, nB = ga * B + gb * D;
    Integer nCN = gc * A + gd * C * N, nD = gc * B + gd * D;
    A = nA;
    B = nB;
    C = nCN / N;
    D = nD;
    inv_steps.push_back({LogGenFactor::Kind::GammaInv, r});
    ++f.gamma_count;
  }
  f.sign = A > 0 ? 1 : -1;
  f.factors = std::move(inv_steps);
  push_power(f.factors, LogGenFactor::Kind::T, f.sign * B);
  return f;
}

Mat2 eval_factorization(const LogGenFactorization& f, long N) {
  Mat2 M = f.sign > 0 ? identity() : neg_identity();
  for (const LogGenFactor& x : f.factors) {
    switch (x.kind) {
      case LogGenFactor::Kind::T: M = mul(M, translation(Rational(x.value))); break;
      case LogGenFactor::Kind::W: M = mul(M, Mat2(1, 0, Rational(x.value * N), 1)); break;
      case LogGenFactor::Kind::GammaInv: M = mul(M, inv(gamma_qa(N, x.value, Integer(1)))); break;
    }
  }
  return M;
}

std::string format_factorization(const LogGenFactorization& f) {
  std::string s = f.sign > 0 ? "+" : "-";
  for (const LogGenFactor& x : f.factors) {
    s += " ";
    switch (x.kind) {
      case LogGenFactor::Kind::T: s += "T^" + x.value.get_str(); break;
      case LogGenFactor::Kind::W: s += "W^" + x.value.get_str(); break;
      case LogGenFactor::Kind::GammaInv: s += "g(" + x.value.get_str() + ",1)^-1"; break;
    }
  }
  return s;
}

}  // namespace gammagen
