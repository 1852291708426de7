#pragma once

// Elementary number theory on machine integers.

#include <cstdint>
#include <utility>
#include <vector>

namespace gammagen::arith {

using i64 = std::int64_t;

struct PrimePower {
  i64 p;
  int e;
};

i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);

/// Returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
struct ExtGcd {
  i64 g, x, y;
};
ExtGcd ext_gcd(i64 a, i64 b);

/// Least non-negative residue.
i64 mod(i64 a, i64 m);
/// Inverse of a modulo m in [0, m); throws std::domain_error if gcd(a, m) != 1.
/// For m == 1 the inverse is 0.
i64 inv_mod(i64 a, i64 m);
i64 mul_mod(i64 a, i64 b, i64 m);
i64 pow_mod(i64 a, i64 e, i64 m);

bool is_prime(i64 n);
std::vector<PrimePower> factorize(i64 n);
std::vector<i64> prime_divisors(i64 n);
/// Positive divisors of |n| in increasing order (n != 0).
std::vector<i64> divisors(i64 n);
std::vector<i64> primes_up_to(i64 n);

i64 euler_phi(i64 n);
int mobius(i64 n);
/// Carmichael exponent of (Z/n)^x.
i64 carmichael(i64 n);
/// Dedekind psi: n * prod_{p|n} (1 + 1/p).
i64 dedekind_psi(i64 n);
/// Multiplicative order of a modulo n (gcd(a, n) = 1); 1 when n == 1.
i64 mult_order(i64 a, i64 n);
/// Exponent of p in n (n != 0).
int valuation(i64 n, i64 p);

/// Nearest integer to num/den, ties rounded toward zero.
i64 round_nearest_tie_zero(i64 num, i64 den);
/// Representative of a modulo m (m > 0) with the smallest absolute value, ties toward zero.
i64 symmetric_mod(i64 a, i64 m);

}  // namespace gammagen::arith
