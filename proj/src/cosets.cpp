#include "gammagen/cosets.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "gammagen/arith.hpp"
#include "gammagen/error.hpp"

namespace gammagen {

namespace {

constexpr std::int32_t kUndef = -1;
constexpr int kS = 0, kT = 2, kTi = 3;

inline int inv_col(int x) { return x ^ 1; }

using IWord = std::vector<std::uint8_t>;

IWord to_iword(const STWord& w) {
  IWord r;
  r.reserve(w.size());
  for (STLetter x : w) r.push_back(x == STLetter::S ? kS : x == STLetter::T ? kT : kTi);
  return r;
}

IWord invert(const IWord& w) {
  IWord r(w.rbegin(), w.rend());
  for (auto& x : r) x = static_cast<std::uint8_t>(inv_col(x));
  return r;
}

// Free reduction of a word (cancels x x^-1 pairs).
IWord free_reduce(const IWord& w) {
  IWord r;
  for (auto x : w) {
    if (!r.empty() && r.back() == inv_col(x)) r.pop_back();
    else r.push_back(x);
  }
  return r;
}

class Enumerator {
 public:
  Enumerator(std::vector<IWord> subgens, const TCOptions& opts)
      : subgens_(std::move(subgens)), opts_(opts) {
    std::vector<IWord> rels = {{kS, kS, kS, kS}, {kS, kS, kS, kT, kS, kT, kS, kT}};
    std::set<IWord> uniq;
    for (const IWord& r : rels) {
      relators_.push_back(r);
      for (const IWord& base : {r, invert(r)})
        for (std::size_t i = 0; i < base.size(); ++i) {
          IWord c(base.begin() + i, base.end());
          c.insert(c.end(), base.begin(), base.begin() + i);
          uniq.insert(c);
        }
    }
    for (const IWord& c : uniq) conj_by_first_[c[0]].push_back(c);
  }

  TCResult run() {
    TCResult res;
    if (!new_coset()) return overflow(res);
    for (const IWord& w : subgens_) {
      if (!scan_and_fill(0, w)) return overflow(res);
      if (!process_deductions()) return overflow(res);
    }
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!live(c)) continue;
      if (opts_.strategy == TCStrategy::HLT) {
        for (const IWord& r : relators_) {
          if (!scan_and_fill(static_cast<std::int32_t>(c), r)) return overflow(res);
          if (!live(c)) break;
        }
        if (!live(c)) continue;
      }
      for (int x = 0; x < kCols; ++x) {
        if (!live(c)) break;
        if (table_[c][x] != kUndef) continue;
        if (!define(static_cast<std::int32_t>(c), x)) return overflow(res);
        if (opts_.strategy == TCStrategy::Felsch && !process_deductions()) return overflow(res);
      }
    }
    res.status = TCResult::Status::Complete;
    res.cosets_defined = defined_;
    res.max_live = max_live_;
    CosetTable t = compact();
    res.index = static_cast<std::int64_t>(t.size());
    res.audit_ok = audit(t);
    res.table = std::move(t);
    return res;
  }

 private:
  bool live(std::size_t c) const { return parent_[c] == static_cast<std::int32_t>(c); }

  TCResult overflow(TCResult& res) {
    res.status = TCResult::Status::Overflow;
    res.cosets_defined = defined_;
    res.max_live = max_live_;
    return res;
  }

  bool new_coset() {
    if (defined_ >= opts_.max_cosets) return false;
    auto id = static_cast<std::int32_t>(table_.size());
    table_.push_back({kUndef, kUndef, kUndef, kUndef});
    parent_.push_back(id);
    ++defined_;
    ++live_;
    max_live_ = std::max(max_live_, live_);
    return true;
  }

  bool define(std::int32_t c, int x) {
    if (!new_coset()) return false;
    auto n = static_cast<std::int32_t>(table_.size() - 1);
    table_[c][x] = n;
    table_[n][inv_col(x)] = c;
    note_deduction(c, x);
    return true;
  }

  void set_entry(std::int32_t c, int x, std::int32_t d) {
    table_[c][x] = d;
    table_[d][inv_col(x)] = c;
    note_deduction(c, x);
  }

  void note_deduction(std::int32_t c, int x) {
    if (opts_.strategy == TCStrategy::Felsch) deductions_.push_back({c, x});
  }

  std::int32_t rep(std::int32_t k) {
    std::int32_t r = k;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[k] != r) {
      std::int32_t next = parent_[k];
      parent_[k] = r;
      k = next;
    }
    return r;
  }

  void merge(std::int32_t k, std::int32_t l, std::vector<std::int32_t>& queue) {
    std::int32_t a = rep(k), b = rep(l);
    if (a == b) return;
    std::int32_t mu = std::min(a, b), nu = std::max(a, b);
    parent_[nu] = mu;
    --live_;
    queue.push_back(nu);
  }

  void coincidence(std::int32_t a, std::int32_t b) {
    std::vector<std::int32_t> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      std::int32_t g = queue[i];
      for (int x = 0; x < kCols; ++x) {
        std::int32_t d = table_[g][x];
        if (d == kUndef) continue;
        if (table_[d][inv_col(x)] == g) table_[d][inv_col(x)] = kUndef;
        std::int32_t mu = rep(g), nu = rep(d);
        if (table_[mu][x] != kUndef) {
          merge(nu, table_[mu][x], queue);
        } else if (table_[nu][inv_col(x)] != kUndef) {
          merge(mu, table_[nu][inv_col(x)], queue);
        } else {
          table_[mu][x] = nu;
          table_[nu][inv_col(x)] = mu;
          note_deduction(mu, x);
        }
      }
    }
  }

  // Returns false only on overflow.
  bool scan_and_fill(std::int32_t a, const IWord& w) {
    if (w.empty()) return true;
    std::int32_t f = a, b = a;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    for (;;) {
      while (i <= j && table_[f][w[i]] != kUndef) f = table_[f][w[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j >= i && table_[b][inv_col(w[j])] != kUndef) b = table_[b][inv_col(w[j--])];
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        set_entry(f, w[i], b);
        return true;
      }
      if (!define(f, w[i])) return false;
    }
  }

  void scan(std::int32_t a, const IWord& w) {
    std::int32_t f = a, b = a;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    while (i <= j && table_[f][w[i]] != kUndef) f = table_[f][w[i++]];
    if (i > j) {
      if (f != b) coincidence(f, b);
      return;
    }
    while (j >= i && table_[b][inv_col(w[j])] != kUndef) b = table_[b][inv_col(w[j--])];
    if (j < i) {
      coincidence(f, b);
    } else if (i == j) {
      set_entry(f, w[i], b);
    }
  }

  bool process_deductions() {
    while (!deductions_.empty()) {
      auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (!live(static_cast<std::size_t>(c))) continue;
      for (const IWord& r : conj_by_first_[x]) {
        scan(c, r);
        if (!live(static_cast<std::size_t>(c))) break;
      }
      if (!live(static_cast<std::size_t>(c))) continue;
      std::int32_t d = table_[c][x];
      if (d == kUndef || !live(static_cast<std::size_t>(d))) continue;
      for (const IWord& r : conj_by_first_[inv_col(x)]) {
        scan(d, r);
        if (!live(static_cast<std::size_t>(d))) break;
      }
    }
    return true;
  }

  CosetTable compact() {
    std::vector<std::int32_t> remap(table_.size(), kUndef);
    std::int32_t n = 0;
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (live(c)) remap[c] = n++;
    CosetTable t;
    t.rows.resize(static_cast<std::size_t>(n));
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!live(c)) continue;
      for (int x = 0; x < kCols; ++x) {
        std::int32_t d = table_[c][x];
        t.rows[remap[c]][x] = d == kUndef ? kUndef : remap[rep(d)];
      }
    }
    return t;
  }

  bool audit(const CosetTable& t) const {
    auto trace = [&](std::int32_t c, const IWord& w) {
      for (auto x : w) {
        if (c == kUndef) return kUndef;
        c = t.rows[c][x];
      }
      return c;
    };
    for (std::size_t c = 0; c < t.size(); ++c) {
      for (int x = 0; x < kCols; ++x) {
        std::int32_t d = t.rows[c][x];
        if (d == kUndef || t.rows[d][inv_col(x)] != static_cast<std::int32_t>(c)) return false;
      }
      for (const IWord& r : relators_)
        if (trace(static_cast<std::int32_t>(c), r) != static_cast<std::int32_t>(c)) return false;
    }
    for (const IWord& w : subgens_)
      if (trace(0, w) != 0) return false;
    return true;
  }

  std::vector<IWord> subgens_;
  TCOptions opts_;
  std::vector<IWord> relators_;
  std::array<std::vector<IWord>, kCols> conj_by_first_;
  std::vector<std::array<std::int32_t, kCols>> table_;
  std::vector<std::int32_t> parent_;
  std::vector<std::pair<std::int32_t, int>> deductions_;
  std::size_t defined_ = 0, live_ = 0, max_live_ = 0;
};

}  // namespace

TCResult todd_coxeter(const std::vector<STWord>& subgens, const TCOptions& opts) {
  if (opts.max_cosets < 1) throw DomainError("todd_coxeter: max_cosets must be positive");
  std::vector<IWord> words;
  for (const STWord& w : subgens) {
    IWord r = free_reduce(to_iword(w));
    if (!r.empty()) words.push_back(std::move(r));
  }
  return Enumerator(std::move(words), opts).run();
}

TCResult subgroup_index(const std::vector<Mat2>& gens, const TCOptions& opts) {
  std::vector<STWord> words;
  words.reserve(gens.size());
  for (const Mat2& g : gens) words.push_back(matrix_to_stword(g));
  return todd_coxeter(words, opts);
}

std::size_t Gamma1Action::label_of(long c, long d) const {
  long idx = arith::mod(c, N) * N + arith::mod(d, N);
  std::int64_t l = lookup[static_cast<std::size_t>(idx)];
  if (l < 0) throw DomainError("label_of: not a primitive row");
  return static_cast<std::size_t>(l);
}

Gamma1Action gamma1_coset_action(long N) {
  if (N < 1) throw DomainError("gamma1_coset_action: level must be positive");
  Gamma1Action act;
  act.N = N;
  act.lookup.assign(static_cast<std::size_t>(N * N), -1);
  auto add = [&](long c, long d) {
    act.lookup[static_cast<std::size_t>(c * N + d)] = static_cast<std::int64_t>(act.labels.size());
    act.labels.push_back({c, d});
  };
  add(0, 1 % N);
  for (long c = 0; c < N; ++c)
    for (long d = 0; d < N; ++d)
      if (act.lookup[static_cast<std::size_t>(c * N + d)] < 0 && arith::gcd(arith::gcd(c, d), N) == 1) add(c, d);
  act.perm_S.resize(act.labels.size());
  act.perm_T.resize(act.labels.size());
  for (std::size_t i = 0; i < act.labels.size(); ++i) {
    auto [c, d] = act.labels[i];
    act.perm_S[i] = act.label_of(d, -c);
    act.perm_T[i] = act.label_of(c, c + d);
  }
  return act;
}

std::vector<Mat2> schreier_generators(long N, const SchreierOptions& opts) {
  Gamma1Action act = gamma1_coset_action(N);
  const std::size_t n = act.labels.size();
  std::vector<std::optional<Mat2>> reps(n);
  reps[0] = identity();
  std::deque<std::size_t> queue{0};
  const Mat2 S = mat_S(), T = mat_T();
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (int g = 0; g < 2; ++g) {
      std::size_t j = g == 0 ? act.perm_S[i] : act.perm_T[i];
      if (reps[j]) continue;
      reps[j] = mul(*reps[i], g == 0 ? S : T);
      queue.push_back(j);
    }
  }
  // T and W head the list; they lie in Gamma1(N) for every N.
  std::vector<Mat2> gens{mat_T()};
  std::set<std::string> seen{format_mat2(mat_T())};
  if (seen.insert(format_mat2(mat_W(N))).second) gens.push_back(mat_W(N));
  for (std::size_t i = 0; i < n; ++i)
    for (int g = 0; g < 2; ++g) {
      std::size_t j = g == 0 ? act.perm_S[i] : act.perm_T[i];
      Mat2 h = mul(mul(*reps[i], g == 0 ? S : T), inv(*reps[j]));
      if (h == identity()) continue;
      if (!seen.insert(format_mat2(h)).second) continue;
      if (!in_gamma1(h, N)) throw std::logic_error("schreier_generators: generator outside Gamma1(N)");
      gens.push_back(h);
    }
  const auto target = static_cast<std::int64_t>(n);
  auto index_of = [&](const std::vector<Mat2>& gs) {
    TCResult r = subgroup_index(gs, opts.tc);
    return r.complete() ? r.index : -1;
  };
  if (index_of(gens) != target) throw std::logic_error("schreier_generators: index check failed");
  if (opts.prune) {
    // Overflow keeps the generator, so a modest cap stays sound.
    TCOptions trial_opts = opts.tc;
    trial_opts.max_cosets = std::min<std::size_t>(opts.tc.max_cosets, 64 * n + 1024);
    // Try dropping the tallest generators first so short ones survive.
    std::stable_sort(gens.begin(), gens.end(), [&](const Mat2& x, const Mat2& y) {
      return height(x, N) < height(y, N);
    });
    for (std::size_t k = gens.size(); k-- > 0;) {
      std::vector<Mat2> trial = gens;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
      TCResult r = subgroup_index(trial, trial_opts);
      if (r.complete() && r.index == target) gens = std::move(trial);
    }
  }
  return gens;
}

std::int64_t index_gamma0(long N) {
  if (N < 1) throw DomainError("index_gamma0: level must be positive");
  return arith::dedekind_psi(N);
}

std::int64_t index_gamma1(long N) { return index_gamma0(N) * arith::euler_phi(N); }

std::int64_t index_gamma_q(long N, long q) {
  if (N < 1) throw DomainError("index_gamma_q: level must be positive");
  if (arith::gcd(q, N) != 1) throw DomainError("index_gamma_q: gcd(q, N) != 1");
  return index_gamma1(N) / arith::mult_order(q, N);
}

}  // namespace gammagen
