#include "gammagen/commands.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "gammagen/arith.hpp"
#include "gammagen/cosets.hpp"
#include "gammagen/error.hpp"
#include "gammagen/exactalg.hpp"
#include "gammagen/generator_table.hpp"
#include "gammagen/identities.hpp"
#include "gammagen/twists.hpp"
#include "gammagen/words.hpp"
#include "json.hpp"

namespace gammagen {

namespace {

using json = nlohmann::ordered_json;

struct Tally {
  std::size_t pass = 0, fail = 0, inconclusive = 0;

  void add(bool ok) { ok ? ++pass : ++fail; }
  int exit_code() const { return fail ? 1 : (inconclusive ? 2 : 0); }
  std::string str() const {
    std::ostringstream os;
    os << pass << " passed, " << fail << " failed";
    if (inconclusive) os << ", " << inconclusive << " inconclusive";
    return os.str();
  }
};

std::string rational_str(const Rational& r) { return Rational(r).get_str(); }

json cyclo_json(const CycloNumber& c) {
  json coeffs = json::array();
  for (const auto& r : c.coeffs()) coeffs.push_back(rational_str(r));
  return json{{"conductor", c.conductor()}, {"coeffs", coeffs}};
}

CommandResult finish(std::vector<json> recs, const std::string& what, const Tally& t) {
  CommandResult out;
  for (auto& r : recs) out.records.push_back(r.dump());
  out.summary = what + ": " + t.str();
  out.exit_code = t.exit_code();
  return out;
}

json gens_record(long N, const std::vector<Mat2>& mats, const std::vector<std::string>& names,
                 std::size_t max_cosets, Tally& t) {
  json r{{"N", N}};
  if (!names.empty()) r["generators"] = names;
  else {
    json ms = json::array();
    for (const auto& m : mats) ms.push_back(format_mat2(m));
    r["generators"] = ms;
  }
  bool members = std::all_of(mats.begin(), mats.end(), [&](const Mat2& m) { return in_gamma0(m, N); });
  const std::int64_t expected = index_gamma0(N);
  r["expected_index"] = expected;
  if (!members) {
    r["status"] = "not_in_gamma0";
    t.add(false);
    return r;
  }
  TCResult tc = subgroup_index(mats, TCOptions{max_cosets, TCStrategy::Felsch});
  r["cosets_defined"] = tc.cosets_defined;
  if (!tc.complete()) {
    r["status"] = "overflow";
    ++t.inconclusive;
    return r;
  }
  r["index"] = tc.index;
  bool ok = tc.index == expected && tc.audit_ok;
  r["status"] = ok ? "certified" : "index_mismatch";
  t.add(ok);
  return r;
}

}  // namespace

CommandResult cmd_gens(long N, const std::vector<Mat2>& matrices, std::size_t max_cosets) {
  if (N < 1) throw DomainError("gens: level must be positive");
  Tally t;
  const GeneratorRow* row = find_small_level(N);
  json rec;
  if (matrices.empty()) {
    if (!row) throw DomainError("gens: level " + std::to_string(N) + " is not tabulated; pass --matrix");
    std::vector<std::string> names;
    for (const auto& g : row->gens) names.push_back(g.name());
    rec = gens_record(N, row_matrices(*row), names, max_cosets, t);
    rec["source"] = "table";
  } else {
    rec = gens_record(N, matrices, {}, max_cosets, t);
    rec["source"] = "input";
    if (row) {
      auto tab = row_matrices(*row);
      bool same = tab.size() == matrices.size() &&
                  std::all_of(matrices.begin(), matrices.end(), [&](const Mat2& m) {
                    return std::find(tab.begin(), tab.end(), m) != tab.end();
                  });
      rec["same_as_table"] = same;
    }
  }
  return finish({rec}, "gens", t);
}

CommandResult cmd_gens_table(std::size_t max_cosets) {
  Tally t;
  std::vector<json> recs;
  for (const auto& row : small_level_table()) {
    std::vector<std::string> names;
    for (const auto& g : row.gens) names.push_back(g.name());
    json r = gens_record(row.N, row_matrices(row), names, max_cosets, t);
    r["source"] = "table";
    recs.push_back(std::move(r));
  }
  return finish(std::move(recs), "gens table", t);
}

CommandResult cmd_identities() {
  Tally t;
  std::vector<json> recs;
  for (const auto& id : displayed_identities()) {
    bool holds = id.holds();
    bool ok = holds == id.expected;
    t.add(ok);
    json r{{"kind", "identity"}, {"N", id.N}, {"text", id.text}, {"holds", holds}, {"expected", id.expected}};
    if (!id.note.empty()) r["note"] = id.note;
    r["pass"] = ok;
    recs.push_back(std::move(r));
  }
  auto traces = elliptic_trace_conditions();
  auto extra = inverse_translation_conditions();
  traces.insert(traces.end(), extra.begin(), extra.end());
  for (const auto& c : traces) {
    bool ok = c.holds();
    t.add(ok);
    recs.push_back(json{{"kind", "trace"},
                        {"N", c.N},
                        {"text", c.text},
                        {"M", format_mat2(c.M)},
                        {"trace", rational_str(c.M.trace())},
                        {"elliptic_infinite", is_elliptic_infinite(c.M)},
                        {"pass", ok}});
  }
  return finish(std::move(recs), "identities", t);
}

CommandResult cmd_verify_hq(const VerifyHqConfig& cfg) {
  if (cfg.q_from > cfg.q_to) throw DomainError("verify-hq: empty q range");
  VerifyHqReport rep = verify_hq(cfg);
  Tally t;
  std::vector<json> recs;
  for (const auto& v : rep.verdicts) {
    json r{{"q", v.q}, {"status", status_name(v.status)}, {"via", v.via}};
    if (v.status == Verdict::Status::VerifiedCoset || v.status == Verdict::Status::IndexMismatch) {
      r["index"] = v.index;
      r["expected_index"] = v.expected_index;
    }
    if (!v.witness_ids.empty()) r["witnesses"] = v.witness_ids;
    if (v.status == Verdict::Status::Inconclusive) ++t.inconclusive;
    else t.add(v.verified());
    recs.push_back(std::move(r));
  }
  CommandResult out = finish(std::move(recs), "verify-hq", t);
  out.summary += "; level " + std::to_string(cfg.N) + ", " + std::to_string(rep.gens.size()) +
                 " Gamma1 generators, " + std::to_string(rep.witness_count) + " witnesses" +
                 (rep.cache_hit ? " (cached)" : "");
  return out;
}

namespace {

json twist_record(const HeckeCoefficients& h, const DirichletCharacter& chi, long oracle_x, Tally& t) {
  DirichletPolynomial Df = build_D(h, chi);
  DirichletPolynomial Dg = build_D(h.dual(), chi.conj());
  const long q = chi.modulus(), qs = chi.conductor();
  bool exact = check_fe(Df, Dg, q, qs, h.xi);
  double err = check_fe_numeric(Df, Dg, q, qs, h.xi);
  json r{{"N", h.N},
         {"xi", h.xi.label()},
         {"modulus", q},
         {"character", chi.label()},
         {"conductor", qs},
         {"D", Df.str()},
         {"fe_exact", exact},
         {"fe_numeric_error", err}};
  bool ok = exact && err < 1e-20;
  if (oracle_x > 0) {
    bool orc = oracle_twist_ratio(h, chi, oracle_x, Df);
    r["oracle_x"] = oracle_x;
    r["oracle"] = orc;
    ok = ok && orc;
  }
  r["pass"] = ok;
  t.add(ok);
  return r;
}

}  // namespace

CommandResult cmd_twist_fe(const TwistFeOptions& opts) {
  HeckeCoefficients h = HeckeCoefficients::from_json(opts.coeffs_json);
  std::vector<DirichletCharacter> chars;
  if (opts.all_characters) chars = DirichletCharacter::all(opts.modulus);
  else if (opts.character.empty()) chars.push_back(DirichletCharacter::trivial(opts.modulus));
  else chars.push_back(DirichletCharacter::from_exponents(opts.modulus, opts.character));
  Tally t;
  std::vector<json> recs;
  for (const auto& chi : chars) recs.push_back(twist_record(h, chi, opts.oracle_x, t));
  return finish(std::move(recs), "twist-fe", t);
}

CommandResult cmd_twist_fe_random(std::uint64_t seed, int count, long max_modulus, long oracle_x) {
  if (count < 0 || max_modulus < 1) throw DomainError("twist-fe: bad random parameters");
  std::mt19937_64 rng(seed);
  const long levels[] = {1, 3, 4, 5, 7};
  Tally t;
  std::vector<json> recs;
  for (int trial = 0; trial < count; ++trial) {
    long N = levels[std::uniform_int_distribution<int>(0, 4)(rng)];
    auto xis = DirichletCharacter::all(N);
    auto xi = xis[std::uniform_int_distribution<std::size_t>(0, xis.size() - 1)(rng)];
    long q;
    do q = std::uniform_int_distribution<long>(1, max_modulus)(rng);
    while (arith::gcd(q, N) != 1);
    auto chars = DirichletCharacter::all(q);
    auto chi = chars[std::uniform_int_distribution<std::size_t>(0, chars.size() - 1)(rng)];
    auto h = HeckeCoefficients::random(N, xi, std::max(oracle_x, q), rng);
    json r = twist_record(h, chi, oracle_x, t);
    r["seed"] = seed;
    r["trial"] = trial;
    recs.push_back(std::move(r));
  }
  return finish(std::move(recs), "twist-fe random", t);
}

CommandResult cmd_ramanujan(long q, long n) {
  if (q < 1) throw DomainError("ramanujan: q must be positive");
  Integer a = ramanujan_c(q, n), b = ramanujan_c_direct(q, n);
  Tally t;
  t.add(a == b);
  json r{{"q", q}, {"n", n}, {"c", a.get_str()}, {"direct", b.get_str()}, {"pass", a == b}};
  return finish({r}, "ramanujan", t);
}

CommandResult cmd_orthogonality(long Q) {
  if (Q < 1) throw DomainError("orthogonality: Q must be positive");
  OrthogonalityReport rep = orthogonality_check(Q);
  Tally t;
  t.add(rep.ok);
  json r{{"Q", Q}, {"functions", rep.functions}, {"pairs_checked", rep.pairs_checked}, {"pass", rep.ok}};
  return finish({r}, "orthogonality", t);
}

namespace {

json keydet_record(const ExpSumMatrix& s, Tally& t) {
  KeyDetResult res = key_det_nonzero(s);
  t.add(res.nonzero);
  return json{{"m", s.m},
              {"n", s.n},
              {"primes", s.primes},
              {"nonzero", res.nonzero},
              {"det_conductor", res.det.conductor()},
              {"det_coeffs", cyclo_json(res.det)["coeffs"]}};
}

}  // namespace

CommandResult cmd_keydet(long m, long n, const std::vector<long>& primes, const std::string& subsets_json) {
  ExpSumMatrix s;
  s.m = m;
  s.n = n;
  s.primes = primes;
  try {
    s.subsets = json::parse(subsets_json).get<std::vector<std::vector<std::vector<long>>>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("keydet: subsets must be an h x h array of integer arrays: ") + e.what());
  }
  Tally t;
  try {
    json r = keydet_record(s, t);
    return finish({r}, "keydet", t);
  } catch (const PreconditionError& e) {
    ++t.inconclusive;
    return finish({json{{"error", e.what()}}}, "keydet", t);
  }
}

CommandResult cmd_keydet_random(std::uint64_t seed, int count, int max_h, long max_q, long max_m) {
  std::mt19937_64 rng(seed);
  Tally t;
  std::vector<json> recs;
  for (int trial = 0; trial < count; ++trial) {
    json r = keydet_record(random_exp_sum_matrix(rng, max_h, max_q, max_m), t);
    r["seed"] = seed;
    r["trial"] = trial;
    recs.push_back(std::move(r));
  }
  return finish(std::move(recs), "keydet random", t);
}

CommandResult cmd_decompose(long N, const std::string& matrix_text) {
  Mat2 M = parse_mat2(matrix_text);
  if (!in_gamma0(M, N)) throw DomainError("decompose: matrix is not in Gamma0(" + std::to_string(N) + ")");
  Tally t;
  json r{{"N", N}, {"matrix", format_mat2(M)}, {"height", height(M, N).get_str()}};
  if (N >= 2 && arith::is_prime(N)) {
    LogGenFactorization f = loggen_decompose(N, M);
    bool ok = eval_factorization(f, N) == M;
    r["method"] = "loggen";
    r["factorization"] = format_factorization(f);
    r["gamma_count"] = f.gamma_count;
    r["reconstructs"] = ok;
    t.add(ok);
  } else {
    STWord w = matrix_to_stword(M);
    bool ok = eval_stword(w) == M;
    r["method"] = "st_word";
    r["word"] = format_stword(w);
    r["reconstructs"] = ok;
    t.add(ok);
  }
  return finish({r}, "decompose", t);
}

CommandResult cmd_words(const WordsOptions& opts) {
  const std::int64_t bound = opts.below ? opts.height - 1 : opts.height;
  if (bound < 1) throw DomainError("words: height bound must be at least 1");
  TWBall ball = enumerate_tw(opts.N, bound, opts.N <= 3 ? opts.max_length : -1);
  Tally t;
  std::vector<json> recs;
  std::size_t count = 0;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (!ball.within_bound(i)) continue;
    ++count;
    if (opts.count_only) continue;
    const IntMat2& m = ball.matrix(i);
    std::string w = format_word(ball.word(i));
    recs.push_back(json{{"word", w.empty() ? "e" : w},
                        {"matrix", format_mat2(to_rational(m))},
                        {"height", iheight(m, opts.N)}});
  }
  if (opts.count_only) {
    json r{{"N", opts.N}, {"height", opts.height}, {"below", opts.below}, {"count", count}};
    if (opts.N <= 3) r["max_length"] = opts.max_length;
    recs.push_back(std::move(r));
  }
  t.add(true);
  CommandResult out = finish(std::move(recs), "words", t);
  out.summary = "words: " + std::to_string(count) + " words with height " + (opts.below ? "< " : "<= ") +
                std::to_string(opts.height) + " at level " + std::to_string(opts.N);
  return out;
}

std::string render_table(const std::vector<std::string>& records) {
  std::vector<std::string> cols;
  std::vector<json> rows;
  for (const auto& s : records) {
    json r = json::parse(s);
    for (auto it = r.begin(); it != r.end(); ++it)
      if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
    rows.push_back(std::move(r));
  }
  auto cell = [](const json& r, const std::string& k) -> std::string {
    if (!r.contains(k)) return "";
    const json& v = r[k];
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  std::vector<std::size_t> width(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    width[c] = cols[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], cell(r, cols[c]).size());
  }
  std::ostringstream os;
  auto line = [&](auto get) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::string v = get(c);
      os << v;
      if (c + 1 < cols.size()) os << std::string(width[c] - v.size() + 2, ' ');
    }
    os << '\n';
  };
  line([&](std::size_t c) { return cols[c]; });
  for (const auto& r : rows) line([&](std::size_t c) { return cell(r, cols[c]); });
  return os.str();
}

}  // namespace gammagen
