#include "gammagen/matcore.hpp"

#include <cctype>
#include <sstream>

#include "gammagen/error.hpp"

namespace gammagen {

namespace {

Rational canon(Rational x) {
  x.canonicalize();
  return x;
}

Integer iabs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("IntMat2 overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("IntMat2 overflow");
  return r;
}

}  // namespace

Mat2::Mat2(Rational a, Rational b, Rational c, Rational d)
    : e_{canon(std::move(a)), canon(std::move(b)), canon(std::move(c)), canon(std::move(d))} {}

bool Mat2::is_integral() const {
  for (const auto& x : e_)
    if (x.get_den() != 1) return false;
  return true;
}

bool operator==(const Mat2& x, const Mat2& y) { return x.e_ == y.e_; }

Mat2 identity() { return Mat2(); }
Mat2 neg_identity() { return Mat2(-1, 0, 0, -1); }
Mat2 mat_T() { return Mat2(1, 1, 0, 1); }
Mat2 mat_T_inv() { return Mat2(1, -1, 0, 1); }
Mat2 mat_W(long N) { return Mat2(1, 0, N, 1); }
Mat2 mat_W_inv(long N) { return Mat2(1, 0, -N, 1); }
Mat2 mat_S() { return Mat2(0, -1, 1, 0); }
Mat2 translation(const Rational& x) { return Mat2(1, x, 0, 1); }

Mat2 mul(const Mat2& x, const Mat2& y) {
  return Mat2(x.a() * y.a() + x.b() * y.c(), x.a() * y.b() + x.b() * y.d(),
              x.c() * y.a() + x.d() * y.c(), x.c() * y.b() + x.d() * y.d());
}

Mat2 neg(const Mat2& x) { return Mat2(-x.a(), -x.b(), -x.c(), -x.d()); }

Mat2 inv(const Mat2& x) {
  if (x.det() != 1) throw DomainError("inv: determinant is not 1");
  return Mat2(x.d(), -x.b(), -x.c(), x.a());
}

Mat2 power(const Mat2& x, long k) {
  Mat2 base = k < 0 ? inv(x) : x;
  unsigned long e = k < 0 ? -static_cast<unsigned long>(k) : static_cast<unsigned long>(k);
  Mat2 result;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

bool in_sl2z(const Mat2& M) { return M.is_integral() && M.det() == 1; }

bool in_gamma0(const Mat2& M, long N) {
  if (N < 1 || !in_sl2z(M)) return false;
  return mpz_divisible_ui_p(M.c().get_num().get_mpz_t(), static_cast<unsigned long>(N)) != 0;
}

bool in_gamma1(const Mat2& M, long N) {
  if (!in_gamma0(M, N)) return false;
  Integer n(N);
  Integer am1 = M.a().get_num() - 1, dm1 = M.d().get_num() - 1;
  return mpz_divisible_p(am1.get_mpz_t(), n.get_mpz_t()) &&
         mpz_divisible_p(dm1.get_mpz_t(), n.get_mpz_t());
}

Mat2 gamma_qa(long N, const Integer& q, const Integer& a) {
  if (N < 1) throw DomainError("gamma_qa: level must be positive");
  if (q == 0) throw DomainError("gamma_qa: q must be nonzero");
  Integer aN = a * N;
  Integer g;
  mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), aN.get_mpz_t());
  if (g != 1) throw DomainError("gamma_qa: gcd(q, a*N) != 1");
  if (a == 0) return Mat2(Rational(q), 0, 0, Rational(q));
  Integer m = iabs(aN);
  Integer d;
  if (m == 1) {
    d = 0;
  } else {
    mpz_invert(d.get_mpz_t(), q.get_mpz_t(), m.get_mpz_t());
  }
  Integer c = (1 - q * d) / aN;
  return Mat2(Rational(q), Rational(-a), Rational(c * N), Rational(d));
}

Mat2 gamma_qa(long N, long q, long a) { return gamma_qa(N, Integer(q), Integer(a)); }

Integer height(const Mat2& M, long N) {
  if (!in_gamma0(M, N)) throw DomainError("height: matrix not in Gamma0(N)");
  Integer h = iabs(M.a().get_num());
  for (const Integer& x : {iabs(M.b().get_num()), Integer(iabs(M.c().get_num()) / N),
                           iabs(M.d().get_num())})
    if (x > h) h = x;
  return h;
}

bool is_elliptic_infinite(const Mat2& M) {
  Rational t = M.trace();
  return t.get_den() != 1 && abs(t) < 2;
}

std::optional<Integer> w_power_between(const Mat2& Mprime, const Mat2& M, long N) {
  Mat2 Q = mul(Mprime, inv(M));
  if (!Q.is_integral() || Q.a() != 1 || Q.b() != 0 || Q.d() != 1) return std::nullopt;
  Integer c = Q.c().get_num();
  if (!mpz_divisible_ui_p(c.get_mpz_t(), static_cast<unsigned long>(N))) return std::nullopt;
  return Integer(c / N);
}

Mat2 parse_mat2(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.size() < 4 || s.compare(0, 2, "[[") != 0 || s.compare(s.size() - 2, 2, "]]") != 0)
    throw ParseError("matrix literal must look like [[a,b],[c,d]]");
  std::string body = s.substr(2, s.size() - 4);
  auto mid = body.find("],[");
  if (mid == std::string::npos) throw ParseError("matrix literal: missing row separator");
  std::string rows[2] = {body.substr(0, mid), body.substr(mid + 3)};
  Rational e[4];
  for (int r = 0; r < 2; ++r) {
    auto comma = rows[r].find(',');
    if (comma == std::string::npos || rows[r].find(',', comma + 1) != std::string::npos)
      throw ParseError("matrix literal: each row needs two entries");
    std::string parts[2] = {rows[r].substr(0, comma), rows[r].substr(comma + 1)};
    for (int k = 0; k < 2; ++k) {
      std::string p = parts[k];
      if (!p.empty() && p[0] == '+') p.erase(0, 1);
      Rational x;
      if (p.empty() || x.set_str(p, 10) != 0) throw ParseError("matrix literal: bad entry '" + parts[k] + "'");
      if (x.get_den() == 0) throw ParseError("matrix literal: zero denominator");
      x.canonicalize();
      e[2 * r + k] = x;
    }
  }
  return Mat2(e[0], e[1], e[2], e[3]);
}

std::string format_mat2(const Mat2& M) {
  std::ostringstream os;
  os << "[[" << M.a().get_str() << "," << M.b().get_str() << "],[" << M.c().get_str() << ","
     << M.d().get_str() << "]]";
  return os.str();
}

IntMat2 imul(const IntMat2& x, const IntMat2& y) {
  return {checked_add(checked_mul(x.a, y.a), checked_mul(x.b, y.c)),
          checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.d)),
          checked_add(checked_mul(x.c, y.a), checked_mul(x.d, y.c)),
          checked_add(checked_mul(x.c, y.b), checked_mul(x.d, y.d))};
}

IntMat2 iinv(const IntMat2& x) { return {x.d, -x.b, -x.c, x.a}; }

IntMat2 to_int(const Mat2& M) {
  if (!M.is_integral()) throw DomainError("to_int: non-integral matrix");
  auto conv = [](const Rational& r) {
    const Integer& z = r.get_num();
    if (!z.fits_slong_p()) throw std::overflow_error("to_int: entry exceeds 64 bits");
    return static_cast<std::int64_t>(z.get_si());
  };
  return {conv(M.a()), conv(M.b()), conv(M.c()), conv(M.d())};
}

Mat2 to_rational(const IntMat2& M) {
  auto conv = [](std::int64_t v) { return Rational(Integer(static_cast<long>(v))); };
  return Mat2(conv(M.a), conv(M.b), conv(M.c), conv(M.d));
}

std::int64_t iheight(const IntMat2& M, std::int64_t N) {
  auto ab = [](std::int64_t v) { return v < 0 ? -v : v; };
  std::int64_t h = ab(M.a);
  if (ab(M.b) > h) h = ab(M.b);
  if (ab(M.c) / N > h) h = ab(M.c) / N;
  if (ab(M.d) > h) h = ab(M.d);
  return h;
}

}  // namespace gammagen
