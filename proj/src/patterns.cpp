#include "postman/patterns.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "postman/treedepth.hpp"

namespace postman {

int LabeledPattern::arc_count() const {
  int total = 0;
  for (const auto& p : pairs)
    for (int l = 0; l < kLabelCount; ++l) total += p.c[l];
  return total;
}

std::array<int, kLabelCount> LabeledPattern::label_totals() const {
  std::array<int, kLabelCount> t{};
  for (const auto& p : pairs)
    for (int l = 0; l < kLabelCount; ++l) t[l] += p.c[l];
  return t;
}

long long LabeledPattern::weight() const {
  auto t = label_totals();
  return -static_cast<long long>(t[0]) + t[1] - t[3];
}

bool LabeledPattern::is_balanced() const {
  std::vector<int> bal(num_vertices, 0);
  for (const auto& p : pairs) {
    int m = 0;
    for (int l = 0; l < kLabelCount; ++l) m += p.c[l];
    bal[p.tail] += m;
    bal[p.head] -= m;
  }
  for (int b : bal)
    if (b != 0) return false;
  return true;
}

bool LabeledPattern::is_connected() const {
  if (num_vertices == 0) return true;
  std::vector<std::vector<int>> adj(num_vertices);
  for (const auto& p : pairs) {
    adj[p.tail].push_back(p.head);
    adj[p.head].push_back(p.tail);
  }
  std::vector<char> seen(num_vertices, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  for (char s : seen)
    if (!s) return false;
  return true;
}

bool LabeledPattern::is_valid() const {
  for (const auto& p : pairs)
    if (p.c[static_cast<int>(ArcLabel::Double)] % 2 != 0) return false;
  // At most one Forbidden arc per unordered pair.
  for (const auto& p : pairs) {
    int f = p.c[static_cast<int>(ArcLabel::Forbidden)];
    if (f > 1) return false;
    if (f == 1 && count(p.head, p.tail, ArcLabel::Forbidden) > 0 && p.tail < p.head)
      return false;
  }
  return true;
}

void LabeledPattern::add_arc(int tail, int head, ArcLabel label, int cnt) {
  num_vertices = std::max({num_vertices, tail + 1, head + 1});
  for (auto& p : pairs)
    if (p.tail == tail && p.head == head) {
      p.c[static_cast<int>(label)] = static_cast<uint16_t>(p.c[static_cast<int>(label)] + cnt);
      return;
    }
  PatternPair np;
  np.tail = static_cast<uint8_t>(tail);
  np.head = static_cast<uint8_t>(head);
  np.c[static_cast<int>(label)] = static_cast<uint16_t>(cnt);
  pairs.push_back(np);
  std::sort(pairs.begin(), pairs.end(), [](const PatternPair& a, const PatternPair& b) {
    return std::tie(a.tail, a.head) < std::tie(b.tail, b.head);
  });
}

int LabeledPattern::count(int tail, int head, ArcLabel label) const {
  for (const auto& p : pairs)
    if (p.tail == tail && p.head == head) return p.c[static_cast<int>(label)];
  return 0;
}

namespace {

// Dense view used during canonicalization and enumeration.
struct DenseCounts {
  int k = 0;
  std::vector<std::array<uint16_t, kLabelCount>> c;  // k*k entries

  explicit DenseCounts(const LabeledPattern& p) : k(p.num_vertices), c(p.num_vertices * p.num_vertices) {
    for (const auto& pp : p.pairs) c[pp.tail * k + pp.head] = pp.c;
  }
  const std::array<uint16_t, kLabelCount>& at(int a, int b) const { return c[a * k + b]; }
};

// Lex-max canonical order: vertices placed one at a time; placing vertex v at
// position p appends the block [c(v, sigma_i), c(sigma_i, v)]_{i<p}; the
// canonical order maximizes the concatenated blocks. Ties are explored.
struct Canonicalizer {
  const DenseCounts& d;
  std::vector<int> best_order;
  std::vector<uint16_t> best_seq;
  std::vector<int> order;
  std::vector<uint16_t> seq;
  bool have_best = false;

  explicit Canonicalizer(const DenseCounts& dc) : d(dc) {}

  void block_of(int v, std::vector<uint16_t>& out) const {
    for (int i = 0; i < static_cast<int>(order.size()); ++i) {
      const auto& a = d.at(v, order[i]);
      const auto& b = d.at(order[i], v);
      out.insert(out.end(), a.begin(), a.end());
      out.insert(out.end(), b.begin(), b.end());
    }
  }

  void rec(std::vector<char>& used) {
    if (static_cast<int>(order.size()) == d.k) {
      if (!have_best || seq > best_seq) {
        best_seq = seq;
        best_order = order;
        have_best = true;
      }
      return;
    }
    // Candidate blocks, keeping only the lex-max ones.
    std::vector<std::pair<std::vector<uint16_t>, int>> cands;
    for (int v = 0; v < d.k; ++v) {
      if (used[v]) continue;
      std::vector<uint16_t> blk;
      block_of(v, blk);
      cands.push_back({std::move(blk), v});
    }
    std::vector<uint16_t>* best_blk = nullptr;
    for (auto& [blk, v] : cands)
      if (!best_blk || blk > *best_blk) best_blk = &blk;
    size_t base = seq.size();
    for (auto& [blk, v] : cands) {
      if (blk != *best_blk) continue;
      // Prefix pruning against the best complete sequence.
      seq.insert(seq.end(), blk.begin(), blk.end());
      bool viable = true;
      if (have_best) {
        size_t upto = std::min(seq.size(), best_seq.size());
        for (size_t i = base; i < upto; ++i) {
          if (seq[i] > best_seq[i]) break;
          if (seq[i] < best_seq[i]) {
            viable = false;
            break;
          }
        }
      }
      if (viable) {
        order.push_back(v);
        used[v] = 1;
        rec(used);
        used[v] = 0;
        order.pop_back();
      }
      seq.resize(base);
    }
  }
};

}  // namespace

LabeledPattern canonicalize_pattern(const LabeledPattern& p, std::string* key) {
  if (p.num_vertices == 0) {
    if (key) key->assign(1, '\0');
    return p;
  }
  DenseCounts d(p);
  Canonicalizer can(d);
  std::vector<char> used(d.k, 0);
  can.rec(used);
  // position of each old vertex in the canonical order
  std::vector<int> pos(d.k);
  for (int i = 0; i < d.k; ++i) pos[can.best_order[i]] = i;
  LabeledPattern out;
  out.num_vertices = p.num_vertices;
  for (const auto& pp : p.pairs) {
    PatternPair np = pp;
    np.tail = static_cast<uint8_t>(pos[pp.tail]);
    np.head = static_cast<uint8_t>(pos[pp.head]);
    out.pairs.push_back(np);
  }
  std::sort(out.pairs.begin(), out.pairs.end(), [](const PatternPair& a, const PatternPair& b) {
    return std::tie(a.tail, a.head) < std::tie(b.tail, b.head);
  });
  if (key) {
    std::string k;
    k.push_back(static_cast<char>(out.num_vertices));
    for (const auto& pp : out.pairs) {
      k.push_back(static_cast<char>(pp.tail));
      k.push_back(static_cast<char>(pp.head));
      for (int l = 0; l < kLabelCount; ++l) {
        k.push_back(static_cast<char>(pp.c[l] & 0xff));
        k.push_back(static_cast<char>(pp.c[l] >> 8));
      }
    }
    *key = std::move(k);
  }
  return out;
}

std::string pattern_key(const LabeledPattern& p) {
  std::string key;
  canonicalize_pattern(p, &key);
  return key;
}

namespace {

struct EnumState {
  LabeledPattern pat;  // canonical form
  std::array<int, kLabelCount> totals{};
  std::vector<int> outdeg, indeg;
};

// Adds every simple labeled directed cycle to `s` within the budgets,
// funneling the results через the callback (raw, not canonicalized).
void expand_with_cycles(const EnumState& s, const PatternBudgets& b,
                        const std::function<void(const LabeledPattern&)>& emit) {
  int k = s.pat.num_vertices;
  int remaining = b.max_arcs - s.pat.arc_count();
  if (remaining < 2) return;
  int max_len = std::min(remaining, b.max_vertices);  // cycle uses distinct vertices
  // Dense counts over existing + potential new vertices.
  int kmax = std::max(k, std::min(b.max_vertices, k + max_len));
  std::vector<std::array<int, kLabelCount>> cnt(kmax * kmax);
  for (const auto& pp : s.pat.pairs)
    for (int l = 0; l < kLabelCount; ++l) cnt[pp.tail * kmax + pp.head][l] = pp.c[l];
  std::vector<int> outdeg(kmax, 0), indeg(kmax, 0);
  for (int v = 0; v < k; ++v) {
    outdeg[v] = s.outdeg[v];
    indeg[v] = s.indeg[v];
  }

  std::vector<std::pair<int, ArcLabel>> walk;  // (next vertex, label of arc into it)
  std::vector<char> on_walk(kmax, 0);
  std::array<int, kLabelCount> add_totals{};

  auto forb_conflict = [&](int a, int bb) {
    // one Forbidden arc per unordered pair
    return cnt[a * kmax + bb][3] + cnt[bb * kmax + a][3] > 0;
  };

  auto arc_ok = [&](int from, int to, int l) {
    if (cnt[from * kmax + to][l] + 1 > b.max_per_pair[l]) return false;
    if (s.totals[l] + add_totals[l] + 1 > b.max_label_total[l]) return false;
    if (l == 3 && forb_conflict(from, to)) return false;
    if (outdeg[from] + 1 > b.max_out_degree) return false;
    if (indeg[to] + 1 > b.max_in_degree) return false;
    return true;
  };

  int start = -1, fresh = k;  // next unused new vertex id

  auto push_arc = [&](int from, int to, int l) {
    cnt[from * kmax + to][l] += 1;
    ++add_totals[l];
    ++outdeg[from];
    ++indeg[to];
  };
  auto pop_arc = [&](int from, int to, int l) {
    cnt[from * kmax + to][l] -= 1;
    --add_totals[l];
    --outdeg[from];
    --indeg[to];
  };

  auto build = [&](int cur) {
    LabeledPattern np;
    np.num_vertices = fresh;
    (void)cur;
    for (int a = 0; a < kmax; ++a)
      for (int bb = 0; bb < kmax; ++bb) {
        const auto& cc = cnt[a * kmax + bb];
        for (int l = 0; l < kLabelCount; ++l)
          if (cc[l] > 0) np.add_arc(a, bb, static_cast<ArcLabel>(l), cc[l]);
      }
    emit(np);
  };

  auto step = [&](auto&& self, int cur, int len) -> void {
    // Close the cycle.
    if (len >= 2)
      for (int l = 0; l < kLabelCount; ++l)
        if (arc_ok(cur, start, l)) {
          push_arc(cur, start, l);
          build(cur);
          pop_arc(cur, start, l);
        }
    if (len >= max_len) return;
    // Extend to an unused existing vertex or the next fresh vertex.
    int limit = std::min(fresh + 1, kmax);
    for (int nxt = 0; nxt < limit; ++nxt) {
      if (on_walk[nxt] || nxt == start) continue;
      bool is_new = nxt >= k;
      for (int l = 0; l < kLabelCount; ++l) {
        if (!arc_ok(cur, nxt, l)) continue;
        push_arc(cur, nxt, l);
        on_walk[nxt] = 1;
        if (is_new) ++fresh;
        self(self, nxt, len + 1);
        if (is_new) --fresh;
        on_walk[nxt] = 0;
        pop_arc(cur, nxt, l);
      }
    }
  };

  // Start vertices: every existing vertex; a fresh start only when the state
  // is empty or disconnected growth is allowed.
  std::vector<int> starts;
  for (int v = 0; v < k; ++v) starts.push_back(v);
  if (k == 0 || (!b.connected_only && k < b.max_vertices)) starts.push_back(k);
  for (int s0 : starts) {
    start = s0;
    fresh = k + (s0 == k ? 1 : 0);
    on_walk[s0] = 1;
    step(step, s0, 1);
    on_walk[s0] = 0;
  }
}

bool negative_reachable(const EnumState& s, const PatternBudgets& b) {
  int n = s.totals[0], p = s.totals[1], f = s.totals[3];
  int slack_arcs = b.max_arcs - s.pat.arc_count();
  int slack_labels = (b.max_label_total[0] - n) + (b.max_label_total[3] - f);
  return (n + f - p) + std::min(slack_arcs, slack_labels) >= 1;
}

EnumState make_state(const LabeledPattern& pat) {
  EnumState st;
  st.pat = pat;
  st.totals = pat.label_totals();
  st.outdeg.assign(pat.num_vertices, 0);
  st.indeg.assign(pat.num_vertices, 0);
  for (const auto& pp : pat.pairs) {
    int m = 0;
    for (int l = 0; l < kLabelCount; ++l) m += pp.c[l];
    st.outdeg[pp.tail] += m;
    st.indeg[pp.head] += m;
  }
  return st;
}

}  // namespace

void enumerate_balanced_patterns(const PatternBudgets& budgets,
                                 const std::function<bool(const LabeledPattern&)>& sink) {
  if (budgets.max_arcs < 2) return;
  // Level sets by arc count; each level holds canonical patterns keyed for dedup.
  std::vector<std::map<std::string, LabeledPattern>> levels(budgets.max_arcs + 1);
  {
    LabeledPattern empty;
    EnumState st = make_state(empty);
    expand_with_cycles(st, budgets, [&](const LabeledPattern& raw) {
      std::string key;
      LabeledPattern canon = canonicalize_pattern(raw, &key);
      int a = canon.arc_count();
      levels[a].emplace(std::move(key), std::move(canon));
    });
  }
  for (int a = 2; a <= budgets.max_arcs; ++a) {
    for (const auto& [key, pat] : levels[a]) {
      if (pat.is_valid()) {
        if (!sink(pat)) return;
      }
      EnumState st = make_state(pat);
      if (budgets.require_negative_reachable && !negative_reachable(st, budgets)) continue;
      if (a + 2 > budgets.max_arcs) continue;
      expand_with_cycles(st, budgets, [&](const LabeledPattern& raw) {
        std::string k2;
        LabeledPattern canon = canonicalize_pattern(raw, &k2);
        int a2 = canon.arc_count();
        levels[a2].emplace(std::move(k2), std::move(canon));
      });
    }
    levels[a].clear();
  }
}

std::vector<LabeledPattern> enumerate_balanced_patterns(int max_arcs) {
  PatternBudgets b;
  b.max_arcs = max_arcs;
  b.max_vertices = std::max(2, max_arcs);
  std::vector<LabeledPattern> out;
  enumerate_balanced_patterns(b, [&](const LabeledPattern& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

namespace {

// Per-ordered-pair arc inventory of a restricted-form instance.
struct PairStock {
  std::vector<ArcId> neg, pos, forb;
  std::vector<std::pair<ArcId, ArcId>> doubles;
};

struct InstanceIndex {
  int n = 0;
  std::unordered_map<long long, PairStock> stock;  // key tail * n + head
  std::vector<int> outdeg, indeg;
  std::array<int, kLabelCount> totals{};
  std::array<int, kLabelCount> per_pair_max{};
  int non_isolated = 0;

  const PairStock* find(int tail, int head) const {
    auto it = stock.find(static_cast<long long>(tail) * n + head);
    return it == stock.end() ? nullptr : &it->second;
  }
};

InstanceIndex build_index(const PbsInstance& p) {
  InstanceIndex ix;
  ix.n = p.vertex_count();
  ix.outdeg.assign(ix.n, 0);
  ix.indeg.assign(ix.n, 0);
  for (const auto& a : p.arcs()) {
    auto& st = ix.stock[static_cast<long long>(a.tail) * ix.n + a.head];
    switch (p.pair_kind(a.id)) {
      case PairKind::None:
        (a.weight < 0 ? st.neg : st.pos).push_back(a.id);
        break;
      case PairKind::Forbidden:
        st.forb.push_back(a.id);
        break;
      case PairKind::Double:
        break;  // collected below, pair by pair
    }
    ++ix.outdeg[a.tail];
    ++ix.indeg[a.head];
  }
  for (const auto& [a, b] : p.double_pairs()) {
    const auto& arc = p.arc(a);
    ix.stock[static_cast<long long>(arc.tail) * ix.n + arc.head].doubles.push_back({a, b});
  }
  for (auto& [key, st] : ix.stock) {
    (void)key;
    std::sort(st.neg.begin(), st.neg.end());
    std::sort(st.pos.begin(), st.pos.end());
    std::sort(st.forb.begin(), st.forb.end());
    std::sort(st.doubles.begin(), st.doubles.end());
    ix.totals[0] += static_cast<int>(st.neg.size());
    ix.totals[1] += static_cast<int>(st.pos.size());
    ix.totals[2] += static_cast<int>(st.doubles.size()) * 2;
    ix.per_pair_max[0] = std::max(ix.per_pair_max[0], static_cast<int>(st.neg.size()));
    ix.per_pair_max[1] = std::max(ix.per_pair_max[1], static_cast<int>(st.pos.size()));
    ix.per_pair_max[2] =
        std::max(ix.per_pair_max[2], static_cast<int>(st.doubles.size()) * 2);
  }
  // A forbidden pair contributes at most one usable arc.
  ix.totals[3] = static_cast<int>(p.forbidden_pairs().size());
  ix.per_pair_max[3] = p.forbidden_pairs().empty() ? 0 : 1;
  for (int v = 0; v < ix.n; ++v)
    if (ix.outdeg[v] + ix.indeg[v] > 0) ++ix.non_isolated;
  return ix;
}

std::optional<ArcSelection> embed_with_index(const LabeledPattern& pat, const InstanceIndex& ix) {
  int k = pat.num_vertices;
  if (k > ix.non_isolated) return std::nullopt;
  auto totals = pat.label_totals();
  for (int l = 0; l < kLabelCount; ++l)
    if (totals[l] > ix.totals[l]) return std::nullopt;

  // Pattern adjacency with per-vertex degrees for the search order.
  std::vector<int> pdeg(k, 0);
  for (const auto& pp : pat.pairs) {
    int m = 0;
    for (int l = 0; l < kLabelCount; ++l) m += pp.c[l];
    pdeg[pp.tail] += m;
    pdeg[pp.head] += m;
  }
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(pdeg[b], b) < std::tie(pdeg[a], a);
  });

  std::vector<int> map(k, -1);
  std::vector<char> used(ix.n, 0);

  auto pair_feasible = [&](int pt, int ph) {
    const PairStock* st = ix.find(map[pt], map[ph]);
    for (const auto& pp : pat.pairs) {
      if (pp.tail != pt || pp.head != ph) continue;
      int need_neg = pp.c[0], need_pos = pp.c[1], need_dbl = pp.c[2], need_forb = pp.c[3];
      if (need_neg + need_pos + need_dbl + need_forb == 0) return true;
      if (!st) return false;
      if (static_cast<int>(st->neg.size()) < need_neg) return false;
      if (static_cast<int>(st->pos.size()) < need_pos) return false;
      if (static_cast<int>(st->doubles.size()) * 2 < need_dbl) return false;
      if (static_cast<int>(st->forb.size()) < need_forb) return false;
      return true;
    }
    return true;
  };

  auto rec = [&](auto&& self, size_t pos) -> bool {
    if (pos == order.size()) return true;
    int pv = order[pos];
    for (int gv = 0; gv < ix.n; ++gv) {
      if (used[gv]) continue;
      if (ix.outdeg[gv] + ix.indeg[gv] == 0) continue;
      map[pv] = gv;
      used[gv] = 1;
      bool ok = true;
      for (size_t j = 0; j <= pos && ok; ++j) {
        int pu = order[j];
        if (!pair_feasible(pv, pu) || !pair_feasible(pu, pv)) ok = false;
      }
      if (ok && self(self, pos + 1)) return true;
      used[gv] = 0;
      map[pv] = -1;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;

  // Materialize: lowest arc ids per pair and label; whole double pairs.
  std::vector<ArcId> chosen;
  for (const auto& pp : pat.pairs) {
    const PairStock* st = ix.find(map[pp.tail], map[pp.head]);
    for (int i = 0; i < pp.c[0]; ++i) chosen.push_back(st->neg[i]);
    for (int i = 0; i < pp.c[1]; ++i) chosen.push_back(st->pos[i]);
    for (int i = 0; i < pp.c[2] / 2; ++i) {
      chosen.push_back(st->doubles[i].first);
      chosen.push_back(st->doubles[i].second);
    }
    for (int i = 0; i < pp.c[3]; ++i) chosen.push_back(st->forb[i]);
  }
  return ArcSelection(std::move(chosen));
}

}  // namespace

std::optional<ArcSelection> embed_labeled_pattern(const LabeledPattern& pat,
                                                  const PbsInstance& p) {
  InstanceIndex ix = build_index(p);
  return embed_with_index(pat, ix);
}

void check_restricted_weights(const PbsInstance& p) {
  for (const auto& a : p.arcs()) {
    switch (p.pair_kind(a.id)) {
      case PairKind::Double:
        if (a.weight != 0)
          throw InstanceError("double-pair arc " + std::to_string(a.id) +
                              " must have weight 0");
        break;
      case PairKind::Forbidden:
        if (a.weight != -1)
          throw InstanceError("forbidden-pair arc " + std::to_string(a.id) +
                              " must have weight -1");
        break;
      case PairKind::None:
        if (a.weight != 1 && a.weight != -1)
          throw InstanceError("unpaired arc " + std::to_string(a.id) +
                              " must have weight +1 or -1");
        break;
    }
  }
}

FptResult fpt_negative_pbs(const PbsInstance& p, const FptOptions& options) {
  check_restricted_weights(p);
  FptResult res;
  int td;
  if (options.tree_depth) {
    td = *options.tree_depth;
  } else {
    auto [t, emb] = tree_depth_exact(underlying_graph(p));
    (void)emb;
    td = t;
  }
  res.tree_depth = td;
  long long fb = pattern_size_bound(td);
  int cap = options.arc_cap.value_or(12);
  long long bound = std::min<long long>({fb, cap, p.arc_count()});
  res.bound = bound;
  if (p.arc_count() == 0 || bound < 2) {
    res.complete = bound >= std::min<long long>(fb, p.arc_count());
    return res;
  }

  InstanceIndex ix = build_index(p);
  PatternBudgets budgets;
  budgets.max_arcs = static_cast<int>(bound);
  budgets.max_vertices = std::min<int>(static_cast<int>(bound), ix.non_isolated);
  budgets.max_label_total = ix.totals;
  budgets.max_per_pair = ix.per_pair_max;
  budgets.max_out_degree = *std::max_element(ix.outdeg.begin(), ix.outdeg.end());
  budgets.max_in_degree = *std::max_element(ix.indeg.begin(), ix.indeg.end());
  budgets.connected_only = true;  // a negative PBS has a negative connected component
  budgets.require_negative_reachable = true;

  std::optional<ArcSelection> found;
  long long tried = 0;

  if (options.jobs <= 1) {
    // Serial reference path.
    enumerate_balanced_patterns(budgets, [&](const LabeledPattern& pat) {
      ++tried;
      auto t = pat.label_totals();
      if (t[0] + t[3] <= t[1]) return true;  // not negative
      auto sel = embed_with_index(pat, ix);
      if (sel) {
        found = std::move(sel);
        return false;
      }
      return true;
    });
  } else {
    // Parallel path: batch patterns per level, embed concurrently, first
    // success in canonical order wins.
#ifdef _OPENMP
    omp_set_num_threads(options.jobs);
#endif
    std::vector<LabeledPattern> batch;
    int batch_arcs = -1;
    auto flush = [&]() -> bool {  // returns true when a selection was found
      if (batch.empty()) return false;
      std::vector<std::optional<ArcSelection>> results(batch.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
      for (int i = 0; i < static_cast<int>(batch.size()); ++i)
        results[i] = embed_with_index(batch[i], ix);
      for (int i = 0; i < static_cast<int>(batch.size()); ++i)
        if (results[i]) {
          found = std::move(results[i]);
          return true;
        }
      batch.clear();
      return false;
    };
    bool stop = false;
    enumerate_balanced_patterns(budgets, [&](const LabeledPattern& pat) {
      ++tried;
      auto t = pat.label_totals();
      if (t[0] + t[3] <= t[1]) return true;
      if (pat.arc_count() != batch_arcs) {
        if (flush()) {
          stop = true;
          return false;
        }
        batch_arcs = pat.arc_count();
      }
      batch.push_back(pat);
      return true;
    });
    if (!stop) flush();
  }

  res.patterns_tried = tried;
  res.selection = std::move(found);
  res.complete = res.selection.has_value() ||
                 bound >= std::min<long long>(fb, p.arc_count());
  return res;
}

}  // namespace postman
