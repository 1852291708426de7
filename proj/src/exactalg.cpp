#include "gammagen/exactalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>

#include "gammagen/arith.hpp"
#include "gammagen/error.hpp"

namespace gammagen {

CycloNumber exact_det(const CycloMatrix& a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw DomainError("exact_det: matrix must be square");
  if (n == 0) return CycloNumber(1);
  // Berkowitz: characteristic polynomial coefficients via Toeplitz products.
  std::vector<CycloNumber> poly{CycloNumber(1), -a[0][0]};
  for (std::size_t k = 1; k < n; ++k) {
    // Leading principal k x k block A, column C = a[0..k-1][k], row R = a[k][0..k-1].
    std::vector<CycloNumber> col(k), row(k);
    for (std::size_t i = 0; i < k; ++i) {
      col[i] = a[i][k];
      row[i] = a[k][i];
    }
    // t = [1, -a_kk, -R C, -R A C, ..., -R A^{k-1} C]
    std::vector<CycloNumber> t(k + 2);
    t[0] = CycloNumber(1);
    t[1] = -a[k][k];
    std::vector<CycloNumber> v = col;
    for (std::size_t p = 0; p < k; ++p) {
      CycloNumber s;
      for (std::size_t i = 0; i < k; ++i) s += row[i] * v[i];
      t[p + 2] = -s;
      if (p + 1 < k) {
        std::vector<CycloNumber> w(k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j)
            if (!a[i][j].is_zero() && !v[j].is_zero()) w[i] += a[i][j] * v[j];
        v = std::move(w);
      }
    }
    std::vector<CycloNumber> next(k + 2);
    for (std::size_t i = 0; i < k + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, k); ++j)
        if (!t[i - j].is_zero() && !poly[j].is_zero()) next[i] += t[i - j] * poly[j];
    poly = std::move(next);
  }
  // poly is det(x I - A) scaled so the constant term is (-1)^n det(A).
  return (n % 2 == 0) ? poly[n] : -poly[n];
}

Complex50 numeric_det50(const CycloMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Complex50>> m(n, std::vector<Complex50>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j].to_complex50();
  Complex50 det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(m[i][k]) > abs(m[piv][k])) piv = i;
    if (abs(m[piv][k]) == 0) return Complex50(0);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex50 f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

long ExpSumMatrix::conductor() const {
  long M = m;
  for (long q : primes) M *= q;
  return M;
}

void ExpSumMatrix::validate() const {
  const std::size_t h = primes.size();
  if (h == 0) throw PreconditionError("keydet: need at least one prime");
  if (m < 1 || n < 1) throw PreconditionError("keydet: m and n must be positive");
  if (subsets.size() != h) throw PreconditionError("keydet: subsets must be an h x h array");
  for (std::size_t j = 0; j < h; ++j) {
    long q = primes[j];
    if (!arith::is_prime(q)) throw PreconditionError("keydet: q_" + std::to_string(j + 1) + " is not prime");
    for (std::size_t k = 0; k < j; ++k)
      if (primes[k] == q) throw PreconditionError("keydet: primes must be distinct");
    if ((m % q == 0) || (n % q == 0)) throw PreconditionError("keydet: q_j divides m n");
  }
  for (std::size_t i = 0; i < h; ++i) {
    if (subsets[i].size() != h) throw PreconditionError("keydet: subsets must be an h x h array");
    if (subsets[i][i].empty()) throw PreconditionError("keydet: diagonal subset s_{i,i} is empty");
  }
  for (std::size_t j = 0; j < h; ++j) {
    std::set<long> seen;
    for (std::size_t i = 0; i < h; ++i)
      for (long a : subsets[i][j]) {
        if (a < 1 || a >= primes[j]) throw PreconditionError("keydet: subset element outside 1..q_j-1");
        if (!seen.insert(a).second) throw PreconditionError("keydet: subsets in a column are not disjoint");
      }
  }
}

CycloNumber ExpSumMatrix::entry(std::size_t i, std::size_t j) const {
  long M = m * primes[j];
  std::vector<Rational> c(static_cast<std::size_t>(M));
  for (long a : subsets[i][j]) c[static_cast<std::size_t>(arith::mul_mod(arith::mod(n, M), a, M))] += 1;
  return CycloNumber::from_powers(M, c);
}

CycloMatrix ExpSumMatrix::matrix() const {
  CycloMatrix out(size(), std::vector<CycloNumber>(size()));
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) out[i][j] = entry(i, j);
  return out;
}

namespace {

const std::vector<long> kSmallPrimes{2, 3, 5, 7, 11, 13};

}  // namespace

ExpSumMatrix random_exp_sum_matrix(std::mt19937_64& rng, int max_h, long max_q, long max_m) {
  if (max_h < 1 || max_q < 2 || max_m < 1) throw PreconditionError("random_exp_sum_matrix: empty parameter range");
  ExpSumMatrix s;
  std::uniform_int_distribution<int> hd(1, max_h);
  std::uniform_int_distribution<long> md(1, max_m), nd(1, 50);
  for (;;) {
    s.m = md(rng);
    s.n = nd(rng);
    std::vector<long> pool;
    for (long q : kSmallPrimes)
      if (q <= max_q && s.m % q != 0 && s.n % q != 0) pool.push_back(q);
    int h = hd(rng);
    if (static_cast<int>(pool.size()) < h) continue;
    std::shuffle(pool.begin(), pool.end(), rng);
    s.primes.assign(pool.begin(), pool.begin() + h);
    break;
  }
  const std::size_t h = s.primes.size();
  s.subsets.assign(h, std::vector<std::vector<long>>(h));
  for (std::size_t j = 0; j < h; ++j) {
    // Assign each residue to a row or to no row, keeping s_{j,j} nonempty.
    std::vector<long> res(static_cast<std::size_t>(s.primes[j] - 1));
    std::iota(res.begin(), res.end(), 1);
    std::shuffle(res.begin(), res.end(), rng);
    s.subsets[j][j].push_back(res[0]);
    std::uniform_int_distribution<std::size_t> owner(0, h);
    for (std::size_t k = 1; k < res.size(); ++k) {
      std::size_t i = owner(rng);
      if (i < h) s.subsets[i][j].push_back(res[k]);
    }
  }
  return s;
}

namespace {

using Sparse = std::vector<std::pair<long, std::int64_t>>;

Sparse sparse_mul(const Sparse& x, const Sparse& y, long M) {
  std::unordered_map<long, std::int64_t> acc;
  for (auto [i, u] : x)
    for (auto [j, v] : y) {
      long k = i + j;
      if (k >= M) k -= M;
      acc[k] += u * v;
    }
  Sparse out;
  for (auto [k, v] : acc)
    if (v != 0) out.emplace_back(k, v);
  return out;
}

}  // namespace

KeyDetResult key_det_nonzero(const ExpSumMatrix& spec) {
  spec.validate();
  const std::size_t h = spec.size();
  const long M = spec.conductor();
  std::vector<std::vector<Sparse>> e(h, std::vector<Sparse>(h));
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      long scale = M / (spec.m * spec.primes[j]);
      long modulus = spec.m * spec.primes[j];
      for (long a : spec.subsets[i][j])
        e[i][j].emplace_back(arith::mul_mod(arith::mod(spec.n, modulus), a, modulus) * scale, 1);
    }
  RootSum total(M);
  std::vector<std::size_t> perm(h);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Sparse prod{{0, 1}};
    for (std::size_t i = 0; i < h && !prod.empty(); ++i) prod = sparse_mul(prod, e[i][perm[i]], M);
    int sign = permutation_sign(perm);
    for (auto [k, v] : prod) total.add(k, sign * v);
  } while (std::next_permutation(perm.begin(), perm.end()));
  KeyDetResult r;
  r.det = total.value();
  r.nonzero = !r.det.is_zero();
  return r;
}

int permutation_sign(const std::vector<std::size_t>& p) {
  std::vector<bool> seen(p.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Kuhn's augmenting paths; match_row[r] = column, match_col[c] = row.
void max_matching(const Pattern& a, std::vector<std::size_t>& match_row, std::vector<std::size_t>& match_col) {
  const std::size_t n = a.size();
  match_row.assign(n, kNone);
  match_col.assign(n, kNone);
  std::vector<char> used;
  std::function<bool(std::size_t)> augment = [&](std::size_t r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!a[r][c] || used[c]) continue;
      used[c] = 1;
      if (match_col[c] == kNone || augment(match_col[c])) {
        match_col[c] = r;
        match_row[r] = c;
        return true;
      }
    }
    return false;
  };
  for (std::size_t r = 0; r < n; ++r) {
    used.assign(n, 0);
    augment(r);
  }
}

}  // namespace

HallBlock hall_block_form(const Pattern& a) {
  const std::size_t n = a.size();
  if (n == 0) throw PreconditionError("hall_block_form: empty pattern");
  for (const auto& row : a) {
    if (row.size() != n) throw PreconditionError("hall_block_form: pattern must be square");
    if (std::none_of(row.begin(), row.end(), [](bool x) { return x; }))
      throw PreconditionError("hall_block_form: zero row");
  }
  std::vector<std::size_t> match_row, match_col;
  max_matching(a, match_row, match_col);

  HallBlock hb;
  auto unmatched = std::find(match_row.begin(), match_row.end(), kNone);
  if (unmatched == match_row.end()) {
    hb.m = n;
    for (std::size_t r = 0; r < n; ++r) {
      hb.row_perm.push_back(r);
      hb.col_perm.push_back(match_row[r]);
    }
    return hb;
  }
  std::vector<char> in_set(n, 0);
  {
    // Alternating search from an unmatched row: every reached column is matched,
    // and the rows matched to them form a set whose neighbourhood has equal size.
    std::vector<char> col_seen(n, 0), row_seen(n, 0);
    std::queue<std::size_t> todo;
    std::size_t r0 = static_cast<std::size_t>(unmatched - match_row.begin());
    todo.push(r0);
    row_seen[r0] = 1;
    while (!todo.empty()) {
      std::size_t r = todo.front();
      todo.pop();
      for (std::size_t c = 0; c < n; ++c) {
        if (!a[r][c] || col_seen[c]) continue;
        col_seen[c] = 1;
        std::size_t r2 = match_col[c];
        if (!row_seen[r2]) {
          row_seen[r2] = 1;
          in_set[r2] = 1;
          todo.push(r2);
        }
      }
    }
  }
  // Shrink to a sink strongly connected component of r -> match_col[c] for c in N(r):
  // a closed row set is matched onto exactly its neighbourhood.
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < n; ++r)
    if (in_set[r]) rows.push_back(r);
  auto reach = [&](std::size_t s) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      std::size_t r = stack.back();
      stack.pop_back();
      for (std::size_t c = 0; c < n; ++c) {
        if (!a[r][c]) continue;
        std::size_t r2 = match_col[c];
        if (!seen[r2]) {
          seen[r2] = 1;
          stack.push_back(r2);
        }
      }
    }
    return seen;
  };
  std::vector<std::vector<char>> reach_of(n);
  for (std::size_t r : rows) reach_of[r] = reach(r);
  std::vector<std::size_t> best;
  for (std::size_t r : rows) {
    // r lies in a sink component iff everything it reaches reaches it back.
    bool sink = true;
    std::vector<std::size_t> comp;
    for (std::size_t r2 = 0; r2 < n && sink; ++r2) {
      if (!reach_of[r][r2]) continue;
      if (!reach_of[r2][r]) sink = false;
      comp.push_back(r2);
    }
    if (sink && (best.empty() || comp.size() < best.size())) best = comp;
  }

  hb.m = best.size();
  std::vector<char> used_row(n, 0), used_col(n, 0);
  for (std::size_t r : best) {
    hb.row_perm.push_back(r);
    hb.col_perm.push_back(match_row[r]);
    used_row[r] = 1;
    used_col[match_row[r]] = 1;
  }
  for (std::size_t r = 0; r < n; ++r)
    if (!used_row[r]) hb.row_perm.push_back(r);
  for (std::size_t c = 0; c < n; ++c)
    if (!used_col[c]) hb.col_perm.push_back(c);
  return hb;
}

bool check_block_form(const Pattern& a, const HallBlock& hb) {
  const std::size_t n = a.size();
  if (hb.m < 1 || hb.m > n || hb.row_perm.size() != n || hb.col_perm.size() != n) return false;
  std::vector<std::size_t> r = hb.row_perm, c = hb.col_perm;
  std::sort(r.begin(), r.end());
  std::sort(c.begin(), c.end());
  for (std::size_t i = 0; i < n; ++i)
    if (r[i] != i || c[i] != i) return false;
  for (std::size_t i = 0; i < hb.m; ++i) {
    if (!a[hb.row_perm[i]][hb.col_perm[i]]) return false;
    for (std::size_t j = hb.m; j < n; ++j)
      if (a[hb.row_perm[i]][hb.col_perm[j]]) return false;
  }
  return true;
}

}  // namespace gammagen
