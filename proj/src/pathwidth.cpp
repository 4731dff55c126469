#include "postman/pathwidth.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>

namespace postman {

int PathDecomposition::width() const {
  size_t largest = 1;
  for (const auto& b : bags) largest = std::max(largest, b.size());
  return static_cast<int>(largest) - 1;
}

bool validate_path_decomposition(const SimpleGraph& g, const PathDecomposition& pd,
                                 std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  int m = static_cast<int>(pd.bags.size());
  std::vector<int> first(g.n, -1), last(g.n, -1);
  for (int i = 0; i < m; ++i)
    for (VertexId v : pd.bags[i]) {
      if (v < 0 || v >= g.n) return fail("bag vertex out of range");
      if (first[v] == -1) first[v] = i;
      last[v] = i;
    }
  for (int v = 0; v < g.n; ++v)
    if (first[v] == -1 && !g.adj[v].empty())
      return fail("vertex " + std::to_string(v) + " missing from every bag");
  // Occurrences of each vertex must be a contiguous run.
  std::vector<char> in_bag(g.n, 0);
  for (int i = 0; i < m; ++i) {
    for (VertexId v : pd.bags[i]) in_bag[v] = 1;
    for (int v = 0; v < g.n; ++v)
      if (!in_bag[v] && first[v] <= i && i <= last[v] && first[v] != -1)
        return fail("vertex " + std::to_string(v) + " occurs non-contiguously");
    for (VertexId v : pd.bags[i]) in_bag[v] = 0;
  }
  for (int v = 0; v < g.n; ++v)
    for (int w : g.adj[v]) {
      if (w < v) continue;
      bool covered = false;
      for (int i = first[v]; i <= last[v] && !covered; ++i) {
        bool has_w = false;
        for (VertexId x : pd.bags[i])
          if (x == w) has_w = true;
        covered = has_w;
      }
      if (!covered)
        return fail("edge {" + std::to_string(v) + "," + std::to_string(w) +
                    "} not inside any bag");
    }
  return true;
}

namespace {

// Vertex-separation DP: f(S) = min over orderings placing S first of the
// maximum border seen. Equals pathwidth. Reconstructs an ordering.
PathDecomposition exact_by_ordering(const SimpleGraph& g) {
  int n = g.n;
  std::vector<uint32_t> nbr(n, 0);
  for (int v = 0; v < n; ++v)
    for (int w : g.adj[v]) nbr[v] |= 1u << w;
  uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<int> f(1u << n, 0);
  std::vector<int8_t> choice(1u << n, -1);
  auto border = [&](uint32_t s) {
    int b = 0;
    uint32_t bits = s;
    while (bits) {
      int v = std::countr_zero(bits);
      bits &= bits - 1;
      if (nbr[v] & ~s) ++b;
    }
    return b;
  };
  for (uint32_t s = 1; s <= full; ++s) {
    int bd = border(s);
    int best = n + 1;
    int best_v = -1;
    uint32_t bits = s;
    while (bits) {
      int v = std::countr_zero(bits);
      bits &= bits - 1;
      int cand = f[s & ~(1u << v)];
      if (cand < best) {
        best = cand;
        best_v = v;
      }
    }
    f[s] = std::max(bd, best);
    choice[s] = static_cast<int8_t>(best_v);
  }
  std::vector<int> order(n);
  uint32_t s = full;
  for (int i = n - 1; i >= 0; --i) {
    order[i] = choice[s];
    s &= ~(1u << order[i]);
  }
  // Bags from the ordering: B_t = {placed with unplaced neighbors} + v_t.
  PathDecomposition pd;
  std::vector<char> placed(n, 0);
  for (int t = 0; t < n; ++t) {
    std::vector<VertexId> bag;
    for (int u = 0; u < n; ++u)
      if (placed[u] && (nbr[u] & ~s)) bag.push_back(u);
    bag.push_back(order[t]);
    placed[order[t]] = 1;
    s |= 1u << order[t];
    pd.bags.push_back(std::move(bag));
  }
  if (pd.bags.empty()) pd.bags.push_back({});
  return pd;
}

PathDecomposition from_ordering(const SimpleGraph& g, const std::vector<int>& order) {
  std::vector<char> placed(g.n, 0);
  PathDecomposition pd;
  for (int t = 0; t < g.n; ++t) {
    std::vector<VertexId> bag;
    for (int u = 0; u < g.n; ++u) {
      if (!placed[u]) continue;
      bool open = false;
      for (int w : g.adj[u])
        if (!placed[w]) open = true;
      if (open) bag.push_back(u);
    }
    bag.push_back(order[t]);
    placed[order[t]] = 1;
    pd.bags.push_back(std::move(bag));
  }
  if (pd.bags.empty()) pd.bags.push_back({});
  return pd;
}

}  // namespace

PathDecomposition decomposition_from_embedding(const SimpleGraph& g, const TreeEmbedding& emb) {
  int n = g.n;
  std::vector<std::vector<int>> children(n);
  std::vector<int> roots;
  for (int v = 0; v < n; ++v) {
    if (emb.parent[v] == -1) roots.push_back(v);
    else children[emb.parent[v]].push_back(v);
  }
  PathDecomposition pd;
  std::vector<VertexId> path;
  // One bag per leaf (its root path), leaves in DFS order; a vertex then
  // appears in a contiguous run and every ancestor/descendant edge shares a bag.
  auto dfs = [&](auto&& self, int v) -> void {
    path.push_back(v);
    if (children[v].empty()) pd.bags.push_back(path);
    for (int c : children[v]) self(self, c);
    path.pop_back();
  };
  for (int r : roots) dfs(dfs, r);
  if (pd.bags.empty()) pd.bags.push_back({});
  return pd;
}

PathDecomposition pathwidth_upper_bound(const SimpleGraph& g, int exact_limit) {
  if (g.n == 0) {
    PathDecomposition pd;
    pd.bags.push_back({});
    return pd;
  }
  if (g.n <= std::min(exact_limit, 22)) return exact_by_ordering(g);
  bool small_components = true;
  for (const auto& c : g.components())
    if (c.size() > 20) small_components = false;
  if (small_components) {
    auto [depth, emb] = tree_depth_exact(g);
    (void)depth;
    return decomposition_from_embedding(g, emb);
  }
  // BFS ordering heuristic; always yields a valid decomposition.
  std::vector<int> order;
  std::vector<char> seen(g.n, 0);
  for (int s = 0; s < g.n; ++s) {
    if (seen[s]) continue;
    std::queue<int> q;
    seen[s] = 1;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      order.push_back(v);
      for (int w : g.adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          q.push(w);
        }
    }
  }
  return from_ordering(g, order);
}

void splice_decomposition(PathDecomposition& base, const std::vector<VertexId>& anchor,
                          const PathDecomposition& insert) {
  // Smallest bag containing the whole anchor.
  int at = -1;
  for (size_t i = 0; i < base.bags.size(); ++i) {
    bool all = true;
    for (VertexId v : anchor) {
      bool found = false;
      for (VertexId x : base.bags[i])
        if (x == v) found = true;
      if (!found) all = false;
    }
    if (all && (at == -1 || base.bags[i].size() < base.bags[at].size()))
      at = static_cast<int>(i);
  }
  if (at == -1) throw InstanceError("splice anchor not contained in any bag");
  std::vector<std::vector<VertexId>> run;
  run.push_back(base.bags[at]);
  for (const auto& b : insert.bags) {
    std::vector<VertexId> merged = base.bags[at];
    for (VertexId v : b)
      if (std::find(merged.begin(), merged.end(), v) == merged.end()) merged.push_back(v);
    run.push_back(std::move(merged));
  }
  run.push_back(base.bags[at]);
  base.bags.erase(base.bags.begin() + at);
  base.bags.insert(base.bags.begin() + at, run.begin(), run.end());
}

}  // namespace postman
