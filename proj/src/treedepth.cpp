#include "postman/treedepth.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>

namespace postman {

namespace {

// Per-component state for the bitmask recursion. Vertices are re-indexed
// 0..m-1 inside the component.
struct ComponentSolver {
  std::vector<int> verts;                  // local index -> global vertex
  std::vector<uint32_t> nbr;               // local adjacency bitmasks
  std::unordered_map<uint32_t, std::pair<int, int>> memo;  // mask -> (depth, root)

  // Connected submask components of `mask` after deleting a vertex.
  std::vector<uint32_t> split(uint32_t mask) const {
    std::vector<uint32_t> out;
    uint32_t left = mask;
    while (left) {
      uint32_t comp = left & (~left + 1);  // lowest set bit as seed
      for (;;) {
        uint32_t grown = comp;
        uint32_t bits = comp;
        while (bits) {
          int v = std::countr_zero(bits);
          bits &= bits - 1;
          grown |= nbr[v] & mask;
        }
        if (grown == comp) break;
        comp = grown;
      }
      out.push_back(comp);
      left &= ~comp;
    }
    return out;
  }

  int depth_of(uint32_t mask) {
    if (std::popcount(mask) == 1) return 1;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second.first;
    int best = std::popcount(mask) + 1;
    int best_root = -1;
    uint32_t bits = mask;
    while (bits) {
      int v = std::countr_zero(bits);
      bits &= bits - 1;
      uint32_t rest = mask & ~(1u << v);
      int worst = 0;
      for (uint32_t comp : split(rest)) worst = std::max(worst, depth_of(comp));
      if (1 + worst < best) {
        best = 1 + worst;
        best_root = v;
      }
    }
    memo[mask] = {best, best_root};
    return best;
  }

  void build_embedding(uint32_t mask, VertexId parent_global, TreeEmbedding& emb) {
    int root;
    if (std::popcount(mask) == 1) {
      root = std::countr_zero(mask);
    } else {
      depth_of(mask);
      root = memo[mask].second;
    }
    emb.parent[verts[root]] = parent_global;
    uint32_t rest = mask & ~(1u << root);
    for (uint32_t comp : split(rest)) build_embedding(comp, verts[root], emb);
  }
};

}  // namespace

std::pair<int, TreeEmbedding> tree_depth_exact(const SimpleGraph& g, int component_cap) {
  TreeEmbedding emb;
  emb.parent.assign(g.n, -1);
  int depth = g.n > 0 ? 1 : 0;
  for (const auto& comp : g.components()) {
    if (static_cast<int>(comp.size()) > component_cap)
      throw SearchLimitError("component with " + std::to_string(comp.size()) +
                             " vertices exceeds exact tree-depth cap " +
                             std::to_string(component_cap));
    ComponentSolver solver;
    solver.verts = comp;
    std::vector<int> local(g.n, -1);
    for (size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<int>(i);
    solver.nbr.assign(comp.size(), 0);
    for (size_t i = 0; i < comp.size(); ++i)
      for (int w : g.adj[comp[i]])
        if (local[w] >= 0) solver.nbr[i] |= 1u << local[w];
    uint32_t full = comp.size() == 32 ? ~0u : (1u << comp.size()) - 1;
    depth = std::max(depth, solver.depth_of(full));
    solver.build_embedding(full, -1, emb);
  }
  emb.depth = depth;
  return {depth, emb};
}

bool verify_tree_embedding(const SimpleGraph& g, const TreeEmbedding& emb, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (static_cast<int>(emb.parent.size()) != g.n)
    return fail("parent map covers " + std::to_string(emb.parent.size()) +
                " vertices, graph has " + std::to_string(g.n));
  // Depth of every vertex, with cycle detection while climbing.
  std::vector<int> depth(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    int steps = 0, d = 1, u = v;
    while (emb.parent[u] != -1) {
      u = emb.parent[u];
      if (u < 0 || u >= g.n) return fail("parent out of range");
      if (++steps > g.n) return fail("parent map contains a cycle");
      ++d;
    }
    depth[v] = d;
  }
  auto is_ancestor = [&](int a, int b) {  // a ancestor-or-equal of b
    int u = b;
    while (u != -1) {
      if (u == a) return true;
      u = emb.parent[u];
    }
    return false;
  };
  for (int v = 0; v < g.n; ++v)
    for (int w : g.adj[v]) {
      if (w < v) continue;
      if (!is_ancestor(v, w) && !is_ancestor(w, v))
        return fail("edge {" + std::to_string(v) + "," + std::to_string(w) +
                    "} joins incomparable vertices");
    }
  int actual = 0;
  for (int v = 0; v < g.n; ++v) actual = std::max(actual, depth[v]);
  if (actual != emb.depth)
    return fail("stored depth " + std::to_string(emb.depth) + " but longest path has " +
                std::to_string(actual) + " vertices");
  return true;
}

}  // namespace postman
