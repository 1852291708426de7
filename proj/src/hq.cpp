#include "gammagen/hq.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "gammagen/arith.hpp"
#include "gammagen/error.hpp"
#include "json.hpp"

namespace gammagen {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

struct PairHash {
  std::size_t operator()(const std::pair<i64, i64>& v) const {
    std::uint64_t h = static_cast<std::uint64_t>(v.first) * 0x9e3779b97f4a7c15ull;
    h ^= static_cast<std::uint64_t>(v.second) + 0x7f4a7c159e3779b9ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

struct TupleHash {
  std::size_t operator()(const std::tuple<i64, i64, i64>& v) const {
    std::uint64_t h = static_cast<std::uint64_t>(std::get<0>(v)) * 0x9e3779b97f4a7c15ull;
    h = (h ^ static_cast<std::uint64_t>(std::get<1>(v))) * 0xc2b2ae3d27d4eb4full;
    h = (h ^ static_cast<std::uint64_t>(std::get<2>(v))) * 0x165667b19e3779f9ull;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

i64 narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("witness entry exceeds 64 bits");
  return static_cast<i64>(v);
}

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

class Harvester {
 public:
  Harvester(const TWBall& ball, const HarvestOptions& opts) : ball_(ball), opts_(opts), N_(ball.level()) {
    for (std::size_t i = 0; i < ball.size(); ++i) {
      if (!ball.within_bound(i)) continue;
      const IntMat2& m = ball.matrix(i);
      top_rows_.emplace(std::make_pair(m.a, m.b), static_cast<std::uint32_t>(i));
    }
  }

  /// If G is a ball element u, emits u^-1 * G = I and returns true.
  bool trivial(int gen_index, const IntMat2& G, std::vector<Witness>& out) {
    for (std::size_t i = 0; i < ball_.size(); ++i) {
      if (!(ball_.matrix(i) == G)) continue;
      Witness w;
      w.gen_index = gen_index;
      w.left_word = inverse_word(ball_.word(i));
      out.push_back(std::move(w));
      return true;
    }
    return false;
  }

  void harvest(int gen_index, const IntMat2& G, bool inverse_used, std::vector<Witness>& out) {
    std::unordered_set<std::pair<i64, i64>, PairHash> seen_cols;
    const i64 B = ball_.height_bound();
    for (std::size_t j = 0; j < ball_.size(); ++j) {
      if (!ball_.within_bound(j)) continue;
      if (per_gen_count_ >= opts_.max_per_gen) return;
      IntMat2 M;
      try {
        M = imul(G, ball_.matrix(j));
      } catch (const std::overflow_error&) {
        continue;
      }
      const i64 x = M.a, y = M.c;
      if (!seen_cols.insert({x, y}).second) continue;
      if (y == 0) {
        consider(gen_index, inverse_used, 0, j, M, out);
        continue;
      }
      const i64 ay = std::llabs(y);
      const i64 xinv = arith::inv_mod(x, ay);
      const i64 R = opts_.r_max;
      // Window for p valid for every |r| <= R: |p| <= B and |p x - r| <= B |y|.
      i64 lo = -B, hi = B;
      if (x != 0) {
        i64 ax = std::llabs(x);
        i64 reach = narrow((static_cast<i128>(B) * ay + R) / ax);
        lo = std::max(lo, -reach);
        hi = std::min(hi, reach);
      }
      if (lo > hi) continue;
      const i64 width = hi - lo;
      const i64 step = static_cast<i64>((static_cast<i128>(N_) * xinv) % ay);
      // Walk r = 1, 1 + N, ... and r = 1 - N, 1 - 2N, ...; delta = (r xinv - lo) mod |y|.
      for (int dir = 0; dir < 2; ++dir) {
        i64 r = dir == 0 ? 1 : 1 - N_;
        const i64 dr = dir == 0 ? N_ : -N_;
        const i64 dstep = dir == 0 ? step : arith::mod(-step, ay);
        i64 delta = arith::mod(static_cast<i64>((static_cast<i128>(arith::mod(r, ay)) * xinv) % ay) - arith::mod(lo, ay), ay);
        for (; std::llabs(r) <= R; r += dr) {
          for (i64 p = lo + delta; delta <= width && p <= hi; p += ay) {
            i128 num = static_cast<i128>(r) - static_cast<i128>(p) * x;
            i64 s = narrow(num / y);
            if (std::llabs(s) <= B) {
              auto it = top_rows_.find({p, s});
              if (it != top_rows_.end()) consider(gen_index, inverse_used, it->second, j, M, out);
            }
          }
          delta += dstep;
          if (delta >= ay) delta -= ay;
        }
      }
    }
  }

  void reset_gen() {
    per_gen_count_ = 0;
    keys_.clear();
  }

 private:
  void consider(int gen_index, bool inverse_used, std::size_t left, std::size_t right, const IntMat2& M,
                std::vector<Witness>& out) {
    const IntMat2& L = ball_.matrix(left);
    i64 r = narrow(static_cast<i128>(L.a) * M.a + static_cast<i128>(L.b) * M.c);
    if (arith::mod(r - 1, N_) != 0 || std::llabs(r) > opts_.r_max) return;
    i64 b = narrow(static_cast<i128>(L.a) * M.b + static_cast<i128>(L.b) * M.d);
    std::vector<i64> ms;
    if (r == 1) {
      ms.push_back(1);
    } else {
      for (i64 d : arith::divisors((r - 1) / N_)) {
        if (d > opts_.m_bound) break;
        ms.push_back(d);
        ms.push_back(-d);
      }
    }
    const i64 ar = std::llabs(r);
    for (i64 m : ms) {
      i64 res = static_cast<i64>(arith::mod(static_cast<i64>(
          (static_cast<i128>(N_) * m % ar * (b % ar)) % ar), ar));
      if (!keys_.insert({ar, res, m}).second) continue;
      if (per_gen_count_ >= opts_.max_per_gen) return;
      Witness w;
      w.gen_index = gen_index;
      w.r = r;
      w.b = b;
      w.m = m;
      w.left_word = ball_.word(left);
      w.right_word = ball_.word(right);
      w.inverse_used = inverse_used;
      out.push_back(std::move(w));
      ++per_gen_count_;
    }
  }

  const TWBall& ball_;
  HarvestOptions opts_;
  long N_;
  std::unordered_map<std::pair<i64, i64>, std::uint32_t, PairHash> top_rows_;
  std::unordered_set<std::tuple<i64, i64, i64>, TupleHash> keys_;
  std::size_t per_gen_count_ = 0;
};

Mat2 column_completion(i64 q, i64 lower) {
  // (q, -v; lower, u) with q u + lower v = 1.
  auto e = arith::ext_gcd(q, lower);
  if (e.g != 1) throw DomainError("column_completion: entries not coprime");
  return Mat2(Rational(Integer(static_cast<long>(q))), Rational(Integer(static_cast<long>(-e.y))),
              Rational(Integer(static_cast<long>(lower))), Rational(Integer(static_cast<long>(e.x))));
}

Integer big(i64 v) { return Integer(static_cast<long>(v)); }

}  // namespace

std::int64_t Witness::residue(long N) const {
  i64 ar = std::llabs(r);
  return arith::mod(static_cast<i64>((static_cast<i128>(N) * m % ar) * (b % ar) % ar), ar);
}

std::vector<Witness> find_witnesses(const TWBall& ball, const std::vector<Mat2>& gens,
                                    const HarvestOptions& opts) {
  std::vector<Witness> out;
  Harvester h(ball, opts);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    h.reset_gen();
    if (h.trivial(static_cast<int>(i), to_int(gens[i]), out)) continue;
    h.harvest(static_cast<int>(i), to_int(gens[i]), false, out);
    h.harvest(static_cast<int>(i), to_int(inv(gens[i])), true, out);
  }
  return out;
}

std::vector<Witness> find_witnesses(long N, const std::vector<Mat2>& gens, std::int64_t height_bound,
                                    const HarvestOptions& opts) {
  TWBall ball = N >= 4 ? enumerate_tw(N, height_bound) : enumerate_tw(N, height_bound, opts.small_level_length);
  return find_witnesses(ball, gens, opts);
}

Mat2 witness_matrix(const Witness& w, const std::vector<Mat2>& gens, long N) {
  const Mat2& g = gens.at(static_cast<std::size_t>(w.gen_index));
  return eval_word(w.left_word, N) * (w.inverse_used ? inv(g) : g) * eval_word(w.right_word, N);
}

bool replay_witness(const Witness& w, const std::vector<Mat2>& gens, long N, std::int64_t q) {
  Mat2 gamma = witness_matrix(w, gens, N);
  if (gamma.a() != big(w.r) || gamma.b() != big(w.b)) return false;
  if (arith::mod(w.r - 1, N) != 0) return false;
  if (w.r != 1 && ((w.r - 1) / N) % w.m != 0) return false;
  if (arith::gcd(q, static_cast<i64>(N) * w.m) != 1) return false;
  i64 ar = std::llabs(w.r);
  if (arith::mod(q, ar) != w.residue(N)) return false;
  Integer d = (big(1) - big(w.r)) / (big(N) * big(w.m));
  Integer num = big(q) * d - big(w.b);
  if (!mpz_divisible_p(num.get_mpz_t(), big(w.r).get_mpz_t())) return false;
  Integer e = num / big(w.r);
  Mat2 h = column_completion(q, N * w.m);
  if (!in_gamma0(h, N)) return false;
  Mat2 prod = gamma * translation(Rational(e)) * h;
  return prod.a() == big(q) && in_gamma0(prod, N);
}

std::string status_name(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::VerifiedSieve: return "verified_sieve";
    case Verdict::Status::VerifiedCoset: return "verified_coset";
    case Verdict::Status::IndexMismatch: return "index_mismatch";
    case Verdict::Status::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<Verdict> sieve_q(const std::vector<Witness>& witnesses, int gen_count, std::int64_t q_lo,
                             std::int64_t q_hi, bool primes_only, long N) {
  if (q_lo > q_hi) throw DomainError("sieve_q: empty range");
  if (gen_count < 0) throw DomainError("sieve_q: negative generator count");
  q_lo = std::max<i64>(q_lo, 1);
  std::vector<std::vector<std::size_t>> by_gen(static_cast<std::size_t>(gen_count));
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    int g = witnesses[i].gen_index;
    if (g < 0 || g >= gen_count) throw DomainError("sieve_q: witness generator index out of range");
    by_gen[static_cast<std::size_t>(g)].push_back(i);
  }
  std::vector<std::vector<i64>> m_primes(witnesses.size());
  for (std::size_t i = 0; i < witnesses.size(); ++i)
    m_primes[i] = arith::prime_divisors(witnesses[i].m);

  std::vector<Verdict> out;
  constexpr i64 kSegment = 1 << 16;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  for (i64 lo = q_lo; lo <= q_hi; lo += kSegment) {
    i64 hi = std::min(q_hi, lo + kSegment - 1);
    auto len = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::vector<std::size_t>> first(static_cast<std::size_t>(gen_count),
                                                std::vector<std::size_t>(len, kNone));
    for (int g = 0; g < gen_count; ++g) {
      auto& cov = first[static_cast<std::size_t>(g)];
      for (std::size_t wi : by_gen[static_cast<std::size_t>(g)]) {
        const Witness& w = witnesses[wi];
        i64 M = std::llabs(w.r);
        i64 res = w.residue(N);
        i64 q = lo + arith::mod(res - lo, M);
        for (; q <= hi; q += M) {
          auto k = static_cast<std::size_t>(q - lo);
          if (cov[k] != kNone) continue;
          bool ok = true;
          for (i64 p : m_primes[wi])
            if (q % p == 0) {
              ok = false;
              break;
            }
          if (ok) cov[k] = wi;
        }
      }
    }
    for (i64 q = lo; q <= hi; ++q) {
      if (arith::gcd(q, N) != 1) continue;
      if (primes_only && !arith::is_prime(q)) continue;
      Verdict v;
      v.q = q;
      v.via = "sieve";
      auto k = static_cast<std::size_t>(q - lo);
      bool all = true;
      for (int g = 0; g < gen_count && all; ++g) {
        std::size_t wi = first[static_cast<std::size_t>(g)][k];
        if (wi == kNone) all = false;
        else v.witness_ids.push_back(wi);
      }
      if (all) {
        v.status = Verdict::Status::VerifiedSieve;
      } else {
        v.witness_ids.clear();
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

bool divisor_coverage(std::int64_t n, std::int64_t modulus) {
  if (n == 0) throw DomainError("divisor_coverage: n must be nonzero");
  if (modulus < 1) throw DomainError("divisor_coverage: modulus must be positive");
  std::vector<char> hit(static_cast<std::size_t>(modulus), 0);
  for (i64 d : arith::divisors(n)) hit[static_cast<std::size_t>(d % modulus)] = 1;
  for (i64 c = 0; c < modulus; ++c)
    if (arith::gcd(c, modulus) == 1 && !hit[static_cast<std::size_t>(c)]) return false;
  return true;
}

TWWitnessPairs tw_in_hq_witnesses(long N, std::int64_t q) {
  if (N < 1) throw DomainError("tw_in_hq_witnesses: level must be positive");
  if (arith::gcd(q, N) != 1) throw DomainError("tw_in_hq_witnesses: gcd(q, N) != 1");
  Integer Q = big(q), n = big(N), qb = big(arith::inv_mod(q, N));
  TWWitnessPairs out;
  out.w_left = Mat2(Q, 1, Q * (n + qb) - 1, qb + n);
  out.w_right = Mat2(Q, 1, Q * qb - 1, qb);
  out.t_left = out.w_right;
  out.t_right = Mat2(Q, Q + 1, Q * qb - 1, (Q + 1) * qb - 1);
  return out;
}

Verdict hq_coset_verify(long N, std::int64_t q, std::size_t max_cosets) {
  if (q < 1 || arith::gcd(q, N) != 1) throw DomainError("hq_coset_verify: need q >= 1 coprime to N");
  std::vector<Mat2> gens;
  for (i64 a = 1; a <= q; ++a)
    if (arith::gcd(a, q) == 1) gens.push_back(gamma_qa(N, big(q), big(a)));
  TWWitnessPairs tw = tw_in_hq_witnesses(N, q);
  for (const Mat2* m : {&tw.t_left, &tw.t_right, &tw.w_left, &tw.w_right}) gens.push_back(*m);
  TCResult r = subgroup_index(gens, {.max_cosets = max_cosets});
  Verdict v;
  v.q = q;
  v.via = "coset";
  v.expected_index = index_gamma_q(N, q);
  if (!r.complete()) {
    v.status = Verdict::Status::Inconclusive;
    return v;
  }
  if (!r.audit_ok) throw std::logic_error("hq_coset_verify: coset table failed its audit");
  v.index = r.index;
  v.status = r.index == v.expected_index ? Verdict::Status::VerifiedCoset : Verdict::Status::IndexMismatch;
  return v;
}

std::string generator_fingerprint(const std::vector<Mat2>& gens) {
  std::uint64_t h = 1469598103934665603ull;
  for (const Mat2& g : gens) {
    for (char ch : format_mat2(g) + ";") {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ull;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

using nlohmann::json;

json cache_key(const VerifyHqConfig& cfg, const std::string& fp) {
  return {{"N", cfg.N},
          {"fingerprint", fp},
          {"height_bound", cfg.height_bound},
          {"r_max", cfg.harvest.r_max},
          {"m_bound", cfg.harvest.m_bound},
          {"max_per_gen", cfg.harvest.max_per_gen},
          {"small_level_length", cfg.harvest.small_level_length}};
}

json load_cache(const std::string& path) {
  if (path.empty() || !std::filesystem::exists(path)) return json{{"entries", json::array()}};
  std::ifstream in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception&) {
    return json{{"entries", json::array()}};
  }
  if (!j.is_object() || !j.contains("entries")) return json{{"entries", json::array()}};
  return j;
}

std::optional<std::vector<Witness>> lookup(const json& cache, const json& key) {
  for (const auto& e : cache["entries"]) {
    if (e.value("key", json()) != key) continue;
    std::vector<Witness> ws;
    for (const auto& jw : e["witnesses"]) {
      Witness w;
      w.gen_index = jw.at("g").get<int>();
      w.r = jw.at("r").get<i64>();
      w.b = jw.at("b").get<i64>();
      w.m = jw.at("m").get<i64>();
      w.left_word = parse_word(jw.at("left").get<std::string>());
      w.right_word = parse_word(jw.at("right").get<std::string>());
      w.inverse_used = jw.at("inv").get<bool>();
      ws.push_back(std::move(w));
    }
    return ws;
  }
  return std::nullopt;
}

void store(const std::string& path, json cache, const json& key, const std::vector<Witness>& ws) {
  json arr = json::array();
  for (const Witness& w : ws)
    arr.push_back({{"g", w.gen_index},
                   {"r", w.r},
                   {"b", w.b},
                   {"m", w.m},
                   {"left", format_word(w.left_word)},
                   {"right", format_word(w.right_word)},
                   {"inv", w.inverse_used}});
  json entries = json::array();
  for (auto& e : cache["entries"])
    if (e.value("key", json()) != key) entries.push_back(e);
  entries.push_back({{"key", key}, {"witnesses", std::move(arr)}});
  cache["entries"] = std::move(entries);
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << cache.dump();
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

VerifyHqReport verify_hq(const VerifyHqConfig& cfg) {
  if (cfg.q_from > cfg.q_to) throw DomainError("verify_hq: empty q range");
  VerifyHqReport rep;
  rep.gens = schreier_generators(cfg.N);
  const std::string fp = generator_fingerprint(rep.gens);
  std::vector<Witness> ws;
  json cache;
  json key = cache_key(cfg, fp);
  if (!cfg.witness_cache.empty()) {
    cache = load_cache(cfg.witness_cache);
    if (auto hit = lookup(cache, key)) {
      ws = std::move(*hit);
      rep.cache_hit = true;
    }
  }
  if (!rep.cache_hit) {
    ws = find_witnesses(cfg.N, rep.gens, cfg.height_bound, cfg.harvest);
    if (!cfg.witness_cache.empty()) store(cfg.witness_cache, cache, key, ws);
  }
  rep.witness_count = ws.size();
  rep.verdicts = sieve_q(ws, static_cast<int>(rep.gens.size()), cfg.q_from, cfg.q_to, cfg.primes_only, cfg.N);
  if (cfg.coset_fallback)
    for (Verdict& v : rep.verdicts)
      if (!v.verified()) v = hq_coset_verify(cfg.N, v.q, cfg.max_cosets);
  return rep;
}

}  // namespace gammagen
