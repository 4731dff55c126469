#include "postman/gen.hpp"

#include <algorithm>
#include <set>

namespace postman {

namespace {

std::pair<VertexId, VertexId> random_pair(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> dist(0, n - 1);
  int u = dist(rng), v = dist(rng);
  while (v == u) v = dist(rng);
  return {u, v};
}

}  // namespace

MixedGraph gen_random_mixed(int n, int m, uint64_t seed) {
  if (n < 1 || m < 0) throw InstanceError("bad generator parameters");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 20000; ++attempt) {
    MixedGraph g(n);
    for (int i = 0; i < m; ++i) {
      auto [u, v] = random_pair(rng, n);
      if (rng() % 100 < 40) g.add_edge(u, v, 1);
      else g.add_arc(u, v, 1);
    }
    if (!validate_mcpp_instance(g)) return g;
  }
  throw InstanceError("could not sample a strongly connected instance; parameters too sparse");
}

ColoredGraph gen_random_colored(int k, int class_size, int edge_prob_percent, uint64_t seed) {
  if (k < 1 || class_size < 1) throw InstanceError("bad generator parameters");
  std::mt19937_64 rng(seed);
  ColoredGraph cg(k, k * class_size);
  for (int v = 0; v < k * class_size; ++v) cg.assign_class(v, v / class_size + 1);
  for (int u = 0; u < k * class_size; ++u)
    for (int v = u + 1; v < k * class_size; ++v) {
      if (cg.class_of(u) == cg.class_of(v)) continue;
      if (static_cast<int>(rng() % 100) < edge_prob_percent) cg.add_edge(u, v);
    }
  return cg;
}

PbsInstance gen_random_pbs_theorem2(int n, int zero_arcs, int double_pairs, uint64_t seed) {
  if (n < 2) throw InstanceError("bad generator parameters");
  std::mt19937_64 rng(seed);
  PbsInstance p(n);
  auto [su, sv] = random_pair(rng, n);
  p.add_arc(su, sv, -1);
  for (int i = 0; i < zero_arcs; ++i) {
    auto [u, v] = random_pair(rng, n);
    p.add_arc(u, v, 0);
  }
  std::set<std::pair<int, int>> used;
  for (int i = 0; i < double_pairs; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 1000) throw InstanceError("could not place a double pair");
      auto [u, v] = random_pair(rng, n);
      if (used.count({u, v})) continue;
      used.insert({u, v});
      ArcId a = p.add_arc(u, v, 0), b = p.add_arc(u, v, 0);
      p.add_double_pair(a, b);
      break;
    }
  }
  return p;
}

PbsInstance gen_random_pbs_restricted(int n, int neg_arcs, int pos_arcs, int double_pairs,
                                      int forbidden_pairs, uint64_t seed) {
  if (n < 2) throw InstanceError("bad generator parameters");
  std::mt19937_64 rng(seed);
  PbsInstance p(n);
  for (int i = 0; i < neg_arcs; ++i) {
    auto [u, v] = random_pair(rng, n);
    p.add_arc(u, v, -1);
  }
  for (int i = 0; i < pos_arcs; ++i) {
    auto [u, v] = random_pair(rng, n);
    p.add_arc(u, v, 1);
  }
  std::set<std::pair<int, int>> used_dbl;
  for (int i = 0; i < double_pairs; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 1000) throw InstanceError("could not place a double pair");
      auto [u, v] = random_pair(rng, n);
      if (used_dbl.count({u, v})) continue;
      used_dbl.insert({u, v});
      ArcId a = p.add_arc(u, v, 0), b = p.add_arc(u, v, 0);
      p.add_double_pair(a, b);
      break;
    }
  }
  std::set<std::pair<int, int>> used_forb;
  for (int i = 0; i < forbidden_pairs; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 1000) throw InstanceError("could not place a forbidden pair");
      auto [u, v] = random_pair(rng, n);
      auto key = std::minmax(u, v);
      if (used_forb.count({key.first, key.second})) continue;
      used_forb.insert({key.first, key.second});
      ArcId a = p.add_arc(u, v, -1), b = p.add_arc(v, u, -1);
      p.add_forbidden_pair(a, b);
      break;
    }
  }
  return p;
}

BalancedSample gen_balanced_subgraph_sample(int depth, int cycles, uint64_t seed) {
  if (depth < 2 || cycles < 0) throw InstanceError("bad generator parameters");
  std::mt19937_64 rng(seed);
  int n = 4 + static_cast<int>(rng() % 5);  // 4..8 vertices

  // Random tree of the requested depth bound; vertex 0 is the root.
  std::vector<VertexId> parent(n, -1);
  std::vector<int> vdepth(n, 1);
  for (int v = 1; v < n; ++v) {
    for (;;) {
      int cand = static_cast<int>(rng() % v);
      if (vdepth[cand] < depth) {
        parent[v] = cand;
        vdepth[v] = vdepth[cand] + 1;
        break;
      }
    }
  }
  // Comparable pairs (ancestor, descendant) and chains of length 3.
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::vector<std::array<VertexId, 3>> chains;
  auto is_anc = [&](int a, int b) {  // a proper ancestor of b
    for (int u = parent[b]; u != -1; u = parent[u])
      if (u == a) return true;
    return false;
  };
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      if (a != bb && is_anc(a, bb)) {
        pairs.push_back({a, bb});
        for (int c = 0; c < n; ++c)
          if (c != a && c != bb && is_anc(bb, c)) chains.push_back({a, bb, c});
      }
  if (pairs.empty()) return gen_balanced_subgraph_sample(depth, cycles, seed + 1);

  PbsInstance p(n);
  std::vector<ArcId> selected;
  for (int c = 0; c < cycles; ++c) {
    int kind = static_cast<int>(rng() % 3);
    if (kind == 2 && !chains.empty()) {
      const auto& ch = chains[rng() % chains.size()];
      selected.push_back(p.add_arc(ch[0], ch[1], 1));
      selected.push_back(p.add_arc(ch[1], ch[2], 1));
      selected.push_back(p.add_arc(ch[2], ch[0], -1));
    } else if (kind == 1) {
      // double 2-cycle: a declared pair plus two return arcs
      const auto& pr = pairs[rng() % pairs.size()];
      ArcId a = p.add_arc(pr.first, pr.second, 0);
      ArcId b = p.add_arc(pr.first, pr.second, 0);
      p.add_double_pair(a, b);
      selected.push_back(a);
      selected.push_back(b);
      selected.push_back(p.add_arc(pr.second, pr.first, 1));
      selected.push_back(p.add_arc(pr.second, pr.first, -1));
    } else {
      const auto& pr = pairs[rng() % pairs.size()];
      selected.push_back(p.add_arc(pr.first, pr.second, 1));
      selected.push_back(p.add_arc(pr.second, pr.first, -1));
    }
  }
  // Noise: unselected arcs, occasionally a forbidden pair against a selected
  // arc (the selection then uses at most one side).
  int noise = static_cast<int>(rng() % 4);
  for (int i = 0; i < noise; ++i) {
    const auto& pr = pairs[rng() % pairs.size()];
    p.add_arc(pr.first, pr.second, 1);
  }
  if (!selected.empty() && rng() % 2 == 0) {
    ArcId s = selected[rng() % selected.size()];
    if (p.pair_kind(s) == PairKind::None) {
      ArcId rev = p.add_arc(p.arc(s).head, p.arc(s).tail, p.arc(s).weight);
      p.add_forbidden_pair(s, rev);
    }
  }

  BalancedSample out{std::move(p), ArcSelection(std::move(selected)), TreeEmbedding{}};
  out.embedding.parent = parent;
  out.embedding.depth = *std::max_element(vdepth.begin(), vdepth.end());
  return out;
}

}  // namespace postman
