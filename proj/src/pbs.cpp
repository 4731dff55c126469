#include "postman/pbs.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace postman {

std::string PbsViolation::to_string() const {
  switch (kind) {
    case Unbalanced:
      return "vertex " + std::to_string(vertex) + " is unbalanced";
    case DoubleArcBroken:
      return "double pair (" + std::to_string(arc_a) + "," + std::to_string(arc_b) +
             ") used on one side only";
    case ForbiddenPairUsed:
      return "forbidden pair (" + std::to_string(arc_a) + "," + std::to_string(arc_b) +
             ") used on both sides";
  }
  return "";
}

bool check_properly_balanced(const PbsInstance& p, const ArcSelection& s,
                             PbsViolation* violation) {
  std::vector<long long> bal(p.vertex_count(), 0);
  for (ArcId a : s.ids) {
    if (a < 0 || a >= p.arc_count())
      throw InstanceError("selection references unknown arc " + std::to_string(a));
    bal[p.arc(a).tail] += 1;
    bal[p.arc(a).head] -= 1;
  }
  for (VertexId v = 0; v < p.vertex_count(); ++v)
    if (bal[v] != 0) {
      if (violation) *violation = {PbsViolation::Unbalanced, v, -1, -1};
      return false;
    }
  for (const auto& [a, b] : p.double_pairs()) {
    int used = (s.contains(a) ? 1 : 0) + (s.contains(b) ? 1 : 0);
    if (used == 1) {
      if (violation) *violation = {PbsViolation::DoubleArcBroken, -1, a, b};
      return false;
    }
  }
  for (const auto& [a, b] : p.forbidden_pairs()) {
    if (s.contains(a) && s.contains(b)) {
      if (violation) *violation = {PbsViolation::ForbiddenPairUsed, -1, a, b};
      return false;
    }
  }
  return true;
}

long long selection_weight(const PbsInstance& p, const ArcSelection& s) {
  long long w = 0;
  for (ArcId a : s.ids) w += p.arc(a).weight;
  return w;
}

std::vector<long long> imbalance_vector(const PbsInstance& p, const ArcSelection& s) {
  std::vector<long long> bal(p.vertex_count(), 0);
  for (ArcId a : s.ids) {
    bal[p.arc(a).tail] += 1;
    bal[p.arc(a).head] -= 1;
  }
  return bal;
}

namespace {

bool subset_is_negative_pbs(const PbsInstance& p, const std::vector<ArcId>& arcs,
                            long long weight) {
  if (weight >= 0) return false;
  ArcSelection s;
  s.ids = arcs;  // already sorted by construction below
  return check_properly_balanced(p, s);
}

}  // namespace

std::optional<ArcSelection> brute_force_negative_pbs(const PbsInstance& p,
                                                     std::optional<int> max_arcs) {
  int n = p.arc_count();
  const long long kBudget = 1ll << 24;
  if (!max_arcs) {
    if (n > 24)
      throw SearchLimitError("instance with " + std::to_string(n) +
                             " arcs too large for exhaustive search");
    std::vector<long long> w(n);
    for (int i = 0; i < n; ++i) w[i] = p.arc(i).weight;
    for (unsigned long long mask = 1; mask < (1ull << n); ++mask) {
      long long weight = 0;
      std::vector<ArcId> arcs;
      for (int i = 0; i < n; ++i)
        if (mask & (1ull << i)) {
          weight += w[i];
          arcs.push_back(i);
        }
      if (subset_is_negative_pbs(p, arcs, weight)) {
        ArcSelection s;
        s.ids = std::move(arcs);
        return s;
      }
    }
    return std::nullopt;
  }
  int cap = std::min(*max_arcs, n);
  // Count combinations up front to respect the search budget.
  long long total = 0;
  {
    long long c = 1;
    for (int i = 1; i <= cap; ++i) {
      c = c * (n - i + 1) / i;
      total += c;
      if (total > kBudget)
        throw SearchLimitError("bounded-size enumeration exceeds search budget");
    }
  }
  std::vector<ArcId> arcs;
  std::optional<ArcSelection> found;
  auto rec = [&](auto&& self, int next, long long weight) -> bool {
    if (!arcs.empty() && subset_is_negative_pbs(p, arcs, weight)) {
      ArcSelection s;
      s.ids = arcs;
      found = s;
      return true;
    }
    if (static_cast<int>(arcs.size()) == cap) return false;
    for (int i = next; i < n; ++i) {
      arcs.push_back(i);
      if (self(self, i + 1, weight + p.arc(i).weight)) return true;
      arcs.pop_back();
    }
    return false;
  };
  rec(rec, 0, 0);
  return found;
}

long long pattern_size_bound(int tree_depth) {
  if (tree_depth >= 6) return LLONG_MAX / 4;
  long long e = 1ll << tree_depth;  // 2^k
  return 1ll << e;                  // 2^(2^k), at most 2^32 here
}

namespace {

struct WorkArc {
  ArcId id;
  VertexId tail, head;
};

// Biconnected components of the underlying undirected multigraph; returns the
// arc partition (each part = arcs of one block).
std::vector<std::vector<WorkArc>> blocks_of(const std::vector<WorkArc>& arcs) {
  std::vector<VertexId> verts;
  for (const auto& a : arcs) {
    verts.push_back(a.tail);
    verts.push_back(a.head);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::unordered_map<VertexId, int> local;
  for (size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
  int n = static_cast<int>(verts.size());
  int m = static_cast<int>(arcs.size());
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, arc index)
  for (int i = 0; i < m; ++i) {
    int u = local[arcs[i].tail], v = local[arcs[i].head];
    adj[u].push_back({v, i});
    adj[v].push_back({u, i});
  }
  std::vector<int> num(n, -1), low(n, 0);
  std::vector<int> estack;
  std::vector<std::vector<WorkArc>> out;
  int timer = 0;
  auto dfs = [&](auto&& self, int v, int parent_edge) -> void {
    num[v] = low[v] = timer++;
    for (auto [w, ei] : adj[v]) {
      if (ei == parent_edge) continue;
      if (num[w] == -1) {
        estack.push_back(ei);
        self(self, w, ei);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= num[v]) {
          std::vector<WorkArc> block;
          while (true) {
            int top = estack.back();
            estack.pop_back();
            block.push_back(arcs[top]);
            if (top == ei) break;
          }
          out.push_back(std::move(block));
        }
      } else if (num[w] < num[v]) {
        estack.push_back(ei);
        low[v] = std::min(low[v], num[w]);
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (num[v] == -1) dfs(dfs, v, -1);
  return out;
}

using ParentMap = std::unordered_map<VertexId, VertexId>;  // -1 = root

// Restriction of an ancestor forest to the given vertex set: each vertex gets
// its nearest proper ancestor inside the set.
ParentMap restrict_forest(const ParentMap& parent, const std::vector<VertexId>& verts) {
  std::unordered_set<VertexId> in(verts.begin(), verts.end());
  ParentMap out;
  for (VertexId v : verts) {
    VertexId u = parent.at(v);
    while (u != -1 && !in.count(u)) u = parent.at(u);
    out[v] = u;
  }
  return out;
}

struct Decomposer {
  const PbsInstance& p;

  std::vector<std::vector<ArcId>> run(std::vector<WorkArc> arcs, ParentMap parent) {
    if (arcs.empty()) return {};
    auto blocks = blocks_of(arcs);
    if (blocks.size() > 1) {
      std::vector<std::vector<ArcId>> parts;
      for (auto& b : blocks) {
        auto sub = run(std::move(b), parent);
        parts.insert(parts.end(), sub.begin(), sub.end());
      }
      return parts;
    }
    // One block: find the root of the restricted forest and its single child.
    std::vector<VertexId> verts;
    for (const auto& a : arcs) {
      verts.push_back(a.tail);
      verts.push_back(a.head);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    ParentMap restricted = restrict_forest(parent, verts);
    VertexId root = -1;
    for (VertexId v : verts)
      if (restricted[v] == -1) {
        if (root != -1)
          throw InstanceError("embedding does not cover the selection's component");
        root = v;
      }
    if (root == -1) throw InstanceError("embedding restriction has no root");
    std::vector<VertexId> children;
    for (VertexId v : verts)
      if (v != root && restricted[v] == root) children.push_back(v);
    if (children.size() != 1)
      throw InstanceError("restricted embedding root has " +
                          std::to_string(children.size()) + " children in a 2-connected part");
    VertexId y = children[0];

    // Split off the root<->child arcs, contract root into child, recurse.
    std::vector<WorkArc> between, rest;
    for (const auto& a : arcs) {
      bool rb = (a.tail == root && a.head == y) || (a.tail == y && a.head == root);
      (rb ? between : rest).push_back(a);
    }
    for (auto& a : rest) {
      if (a.tail == root) a.tail = y;
      if (a.head == root) a.head = y;
    }
    ParentMap contracted = restricted;
    contracted.erase(root);
    contracted[y] = -1;
    std::vector<std::vector<ArcId>> parts = run(std::move(rest), contracted);

    // Between-arcs: double pairs kept together, everything else singleton.
    std::vector<ArcId> bet_ids;
    for (const auto& a : between) bet_ids.push_back(a.id);
    std::sort(bet_ids.begin(), bet_ids.end());
    std::unordered_set<ArcId> seen;
    for (ArcId a : bet_ids) {
      if (seen.count(a)) continue;
      seen.insert(a);
      ArcId partner = p.pair_partner(a);
      if (p.pair_kind(a) == PairKind::Double && partner != -1 &&
          std::binary_search(bet_ids.begin(), bet_ids.end(), partner) && !seen.count(partner)) {
        seen.insert(partner);
        parts.push_back({a, partner});
      } else {
        parts.push_back({a});
      }
    }

    // Imbalance of each part at the root (pre-contraction endpoints).
    std::unordered_map<ArcId, const WorkArc*> orig;
    for (const auto& a : arcs) orig[a.id] = &a;
    size_t np = parts.size();
    std::vector<long long> t(np, 0);
    for (size_t i = 0; i < np; ++i)
      for (ArcId a : parts[i]) {
        if (orig[a]->tail == root) t[i] += 1;
        if (orig[a]->head == root) t[i] -= 1;
      }
    return regroup(parts, t);
  }

  // Zero-sum grouping of parts by their root imbalances, following the
  // partial-sum chain: seed with the minimum |t|, then steer the sum toward
  // zero; extract the first zero-sum window and repeat on the remainder.
  std::vector<std::vector<ArcId>> regroup(const std::vector<std::vector<ArcId>>& parts,
                                          std::vector<long long> t) {
    size_t np = parts.size();
    std::vector<char> done(np, 0);
    size_t remaining = np;
    std::vector<std::vector<ArcId>> groups;
    while (remaining > 0) {
      std::vector<size_t> chain;
      std::vector<char> in_chain(np, 0);
      std::map<long long, int> first_pos;  // partial sum -> earliest chain position
      first_pos[0] = -1;
      long long sum = 0;
      int lo = -1, hi = -1;  // window (lo, hi] once found
      while (true) {
        size_t pick = np;
        if (chain.empty()) {
          long long best = LLONG_MAX;
          for (size_t i = 0; i < np; ++i)
            if (!done[i] && !in_chain[i] && std::llabs(t[i]) < best) {
              best = std::llabs(t[i]);
              pick = i;
            }
        } else {
          for (size_t i = 0; i < np; ++i)
            if (!done[i] && !in_chain[i] && (sum > 0 ? t[i] < 0 : t[i] > 0)) {
              pick = i;
              break;
            }
        }
        if (pick == np)
          throw InstanceError("selection is not balanced at the contracted root");
        chain.push_back(pick);
        in_chain[pick] = 1;
        sum += t[pick];
        auto it = first_pos.find(sum);
        if (it != first_pos.end()) {
          lo = it->second;
          hi = static_cast<int>(chain.size()) - 1;
          break;
        }
        first_pos[sum] = static_cast<int>(chain.size()) - 1;
      }
      std::vector<ArcId> merged;
      for (int i = lo + 1; i <= hi; ++i) {
        size_t part = chain[i];
        merged.insert(merged.end(), parts[part].begin(), parts[part].end());
        done[part] = 1;
        --remaining;
      }
      std::sort(merged.begin(), merged.end());
      groups.push_back(std::move(merged));
    }
    return groups;
  }
};

}  // namespace

std::vector<ArcSelection> decompose_balanced_subgraph(const PbsInstance& p,
                                                      const ArcSelection& h,
                                                      const TreeEmbedding& emb) {
  PbsViolation viol;
  if (!check_properly_balanced(p, h, &viol))
    throw InstanceError("selection is not properly balanced: " + viol.to_string());
  std::string why;
  if (!verify_tree_embedding(underlying_graph(p), emb, &why))
    throw InstanceError("invalid tree embedding: " + why);

  std::vector<WorkArc> arcs;
  for (ArcId a : h.ids) arcs.push_back({a, p.arc(a).tail, p.arc(a).head});
  ParentMap parent;
  for (VertexId v = 0; v < p.vertex_count(); ++v) parent[v] = emb.parent[v];

  Decomposer d{p};
  auto raw = d.run(std::move(arcs), std::move(parent));
  std::vector<ArcSelection> out;
  for (auto& ids : raw) out.push_back(ArcSelection(std::move(ids)));
  return out;
}

}  // namespace postman
