#include "gammagen/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace gammagen::arith {

i64 gcd(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 lcm(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  i64 g = gcd(a, b);
  i64 r = (a < 0 ? -a : a) / g;
  return r * (b < 0 ? -b : b);
}

ExtGcd ext_gcd(i64 a, i64 b) {
  i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 inv_mod(i64 a, i64 m) {
  if (m <= 0) throw std::domain_error("inv_mod: modulus must be positive");
  if (m == 1) return 0;
  ExtGcd e = ext_gcd(mod(a, m), m);
  if (e.g != 1) throw std::domain_error("inv_mod: not invertible");
  return mod(e.x, m);
}

i64 mul_mod(i64 a, i64 b, i64 m) {
  return static_cast<i64>((static_cast<__int128>(mod(a, m)) * mod(b, m)) % m);
}

i64 pow_mod(i64 a, i64 e, i64 m) {
  if (m == 1) return 0;
  i64 result = 1, base = mod(a, m);
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  i64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for all 64-bit inputs.
  for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    i64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<PrimePower> factorize(i64 n) {
  if (n == 0) throw std::domain_error("factorize: zero");
  n = n < 0 ? -n : n;
  std::vector<PrimePower> out;
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<i64> prime_divisors(i64 n) {
  std::vector<i64> out;
  for (auto [p, e] : factorize(n)) out.push_back(p);
  return out;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> out{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t sz = out.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<i64> primes_up_to(i64 n) {
  std::vector<i64> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (i64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (i64 j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

i64 euler_phi(i64 n) {
  i64 r = n < 0 ? -n : n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

int mobius(i64 n) {
  int m = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

i64 carmichael(i64 n) {
  i64 r = 1;
  for (auto [p, e] : factorize(n)) {
    i64 pe = 1;
    for (int k = 0; k < e; ++k) pe *= p;
    i64 l = pe / p * (p - 1);
    if (p == 2 && e >= 3) l /= 2;
    r = lcm(r, l);
  }
  return r;
}

i64 dedekind_psi(i64 n) {
  i64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p + 1);
  return r;
}

i64 mult_order(i64 a, i64 n) {
  if (n == 1) return 1;
  if (gcd(a, n) != 1) throw std::domain_error("mult_order: not a unit");
  i64 lam = carmichael(n);
  i64 ord = lam;
  for (i64 p : prime_divisors(lam)) {
    while (ord % p == 0 && pow_mod(a, ord / p, n) == 1) ord /= p;
  }
  return ord;
}

int valuation(i64 n, i64 p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

i64 round_nearest_tie_zero(i64 num, i64 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  bool neg = num < 0;
  i64 a = neg ? -num : num;
  i64 q = a / den, r = a % den;
  if (2 * r > den) ++q;
  return neg ? -q : q;
}

i64 symmetric_mod(i64 a, i64 m) {
  i64 r = mod(a, m);
  if (2 * r > m) r -= m;
  return r;
}

}  // namespace gammagen::arith
