#include "postman/mcpp.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "postman/mincost_flow.hpp"
#include "postman/treedepth.hpp"

namespace postman {

McppSolution McppSolution::zero(const MixedGraph& g) {
  McppSolution s;
  s.arc_count.assign(g.arcs().size(), 0);
  s.edge_fwd.assign(g.edges().size(), 0);
  s.edge_bwd.assign(g.edges().size(), 0);
  return s;
}

long long solution_weight(const MixedGraph& g, const McppSolution& sol) {
  long long w = 0;
  for (size_t i = 0; i < g.arcs().size(); ++i) w += g.arcs()[i].weight * sol.arc_count[i];
  for (size_t i = 0; i < g.edges().size(); ++i)
    w += g.edges()[i].weight * (sol.edge_fwd[i] + sol.edge_bwd[i]);
  return w;
}

namespace {

struct Dsu {
  std::vector<int> up;
  explicit Dsu(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int v) { return up[v] == v ? v : up[v] = find(up[v]); }
  void join(int a, int b) { up[find(a)] = find(b); }
};

}  // namespace

McppCheck verify_mcpp_solution(const MixedGraph& g, const McppSolution& sol) {
  McppCheck out;
  if (sol.arc_count.size() != g.arcs().size() || sol.edge_fwd.size() != g.edges().size() ||
      sol.edge_bwd.size() != g.edges().size()) {
    out.why = "count vectors do not match the instance";
    return out;
  }
  for (long long c : sol.arc_count)
    if (c < 0) {
      out.why = "negative arc count";
      return out;
    }
  for (size_t i = 0; i < g.edges().size(); ++i)
    if (sol.edge_fwd[i] < 0 || sol.edge_bwd[i] < 0) {
      out.why = "negative edge count";
      return out;
    }
  for (size_t i = 0; i < g.arcs().size(); ++i)
    if (sol.arc_count[i] < 1) {
      out.why = "coverage: arc " + std::to_string(g.arcs()[i].id) + " never traversed";
      return out;
    }
  for (size_t i = 0; i < g.edges().size(); ++i)
    if (sol.edge_fwd[i] + sol.edge_bwd[i] < 1) {
      out.why = "coverage: edge " + std::to_string(g.edges()[i].id) + " never traversed";
      return out;
    }
  std::vector<long long> bal(g.vertex_count(), 0);
  for (size_t i = 0; i < g.arcs().size(); ++i) {
    bal[g.arcs()[i].tail] += sol.arc_count[i];
    bal[g.arcs()[i].head] -= sol.arc_count[i];
  }
  for (size_t i = 0; i < g.edges().size(); ++i) {
    bal[g.edges()[i].u] += sol.edge_fwd[i] - sol.edge_bwd[i];
    bal[g.edges()[i].v] += sol.edge_bwd[i] - sol.edge_fwd[i];
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (bal[v] != 0) {
      out.why = "balance: vertex " + std::to_string(v) + " has imbalance " +
                std::to_string(bal[v]);
      return out;
    }
  // Support connectivity.
  if (g.vertex_count() > 0) {
    Dsu dsu(g.vertex_count());
    int anchor = -1;
    for (size_t i = 0; i < g.arcs().size(); ++i)
      if (sol.arc_count[i] > 0) {
        dsu.join(g.arcs()[i].tail, g.arcs()[i].head);
        anchor = g.arcs()[i].tail;
      }
    for (size_t i = 0; i < g.edges().size(); ++i)
      if (sol.edge_fwd[i] + sol.edge_bwd[i] > 0) {
        dsu.join(g.edges()[i].u, g.edges()[i].v);
        anchor = g.edges()[i].u;
      }
    if (anchor != -1) {
      for (size_t i = 0; i < g.arcs().size(); ++i)
        if (sol.arc_count[i] > 0 && dsu.find(g.arcs()[i].tail) != dsu.find(anchor)) {
          out.why = "connectivity: traversal support is disconnected";
          return out;
        }
      for (size_t i = 0; i < g.edges().size(); ++i)
        if (sol.edge_fwd[i] + sol.edge_bwd[i] > 0 &&
            dsu.find(g.edges()[i].u) != dsu.find(anchor)) {
          out.why = "connectivity: traversal support is disconnected";
          return out;
        }
    }
  }
  out.ok = true;
  out.weight = solution_weight(g, sol);
  return out;
}

ClosedWalk extract_closed_walk(const MixedGraph& g, const McppSolution& sol) {
  McppCheck check = verify_mcpp_solution(g, sol);
  if (!check.ok) throw InstanceError("solution does not verify: " + check.why);

  // Expand counts into directed traversal copies, then run Hierholzer.
  struct Step {
    int to;
    ElementId element;
    bool forward;
  };
  std::vector<std::vector<Step>> adj(g.vertex_count());
  long long total = 0;
  for (size_t i = 0; i < g.arcs().size(); ++i)
    for (long long c = 0; c < sol.arc_count[i]; ++c) {
      adj[g.arcs()[i].tail].push_back({g.arcs()[i].head, g.arcs()[i].id, true});
      ++total;
    }
  for (size_t i = 0; i < g.edges().size(); ++i) {
    for (long long c = 0; c < sol.edge_fwd[i]; ++c) {
      adj[g.edges()[i].u].push_back({g.edges()[i].v, g.edges()[i].id, true});
      ++total;
    }
    for (long long c = 0; c < sol.edge_bwd[i]; ++c) {
      adj[g.edges()[i].v].push_back({g.edges()[i].u, g.edges()[i].id, false});
      ++total;
    }
  }
  ClosedWalk walk;
  if (total == 0) return walk;
  int start = -1;
  for (int v = 0; v < g.vertex_count() && start == -1; ++v)
    if (!adj[v].empty()) start = v;
  std::vector<size_t> cursor(g.vertex_count(), 0);
  std::vector<std::pair<int, int>> stack;  // (vertex, incoming traversal index in walk order)
  std::vector<WalkStep> path;
  stack.push_back({start, -1});
  std::vector<WalkStep> incoming;
  incoming.push_back({-1, true});
  while (!stack.empty()) {
    auto [v, in_idx] = stack.back();
    if (cursor[v] < adj[v].size()) {
      const Step& s = adj[v][cursor[v]++];
      stack.push_back({s.to, static_cast<int>(incoming.size())});
      incoming.push_back({s.element, s.forward});
    } else {
      stack.pop_back();
      if (in_idx >= 0) walk.push_back(incoming[in_idx]);
    }
  }
  std::reverse(walk.begin(), walk.end());
  if (static_cast<long long>(walk.size()) != total)
    throw InstanceError("walk extraction failed to consume all traversals");
  return walk;
}

namespace {

// Simple path between two vertices in the mixed graph (arcs directed, edges
// both ways); returns steps as (element, forward). Deterministic BFS.
std::optional<std::vector<WalkStep>> mixed_path(const MixedGraph& g, VertexId from, VertexId to) {
  struct Hop {
    int to;
    ElementId element;
    bool forward;
  };
  std::vector<std::vector<Hop>> adj(g.vertex_count());
  for (const auto& a : g.arcs()) adj[a.tail].push_back({a.head, a.id, true});
  for (const auto& e : g.edges()) {
    adj[e.u].push_back({e.v, e.id, true});
    adj[e.v].push_back({e.u, e.id, false});
  }
  std::vector<int> prev(g.vertex_count(), -1);
  std::vector<Hop> how(g.vertex_count(), {-1, -1, true});
  std::vector<char> seen(g.vertex_count(), 0);
  std::queue<int> q;
  seen[from] = 1;
  q.push(from);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (v == to) break;
    for (const Hop& h : adj[v])
      if (!seen[h.to]) {
        seen[h.to] = 1;
        prev[h.to] = v;
        how[h.to] = h;
        q.push(h.to);
      }
  }
  if (from != to && !seen[to]) return std::nullopt;
  std::vector<WalkStep> steps;
  for (int v = to; v != from && v != -1; v = prev[v]) steps.push_back({how[v].element, how[v].forward});
  std::reverse(steps.begin(), steps.end());
  return steps;
}

void add_step(const MixedGraph& g, McppSolution& sol, const WalkStep& s) {
  // Element ids are global; recover the per-kind index.
  for (size_t i = 0; i < g.arcs().size(); ++i)
    if (g.arcs()[i].id == s.element) {
      sol.arc_count[i] += 1;
      return;
    }
  for (size_t i = 0; i < g.edges().size(); ++i)
    if (g.edges()[i].id == s.element) {
      (s.forward ? sol.edge_fwd[i] : sol.edge_bwd[i]) += 1;
      return;
    }
}

}  // namespace

McppSolution naive_mcpp_solution(const MixedGraph& g) {
  if (auto witness = validate_mcpp_instance(g))
    throw InstanceError("not strongly connected: no path from " +
                        std::to_string(witness->first) + " to " +
                        std::to_string(witness->second));
  McppSolution sol = McppSolution::zero(g);
  for (size_t i = 0; i < g.edges().size(); ++i) {
    sol.edge_fwd[i] += 1;
    sol.edge_bwd[i] += 1;
  }
  for (size_t i = 0; i < g.arcs().size(); ++i) {
    sol.arc_count[i] += 1;
    auto back = mixed_path(g, g.arcs()[i].head, g.arcs()[i].tail);
    if (!back) throw InstanceError("not strongly connected");
    for (const auto& s : *back) add_step(g, sol, s);
  }
  return sol;
}

McppSolution normalize_solution(const MixedGraph& g, const McppSolution& sol) {
  McppCheck check = verify_mcpp_solution(g, sol);
  if (!check.ok) throw InstanceError("solution does not verify: " + check.why);
  McppSolution out = sol;
  for (size_t i = 0; i < g.edges().size(); ++i) {
    while (out.edge_fwd[i] >= 1 && out.edge_bwd[i] >= 1 &&
           out.edge_fwd[i] + out.edge_bwd[i] > 2) {
      McppSolution trial = out;
      trial.edge_fwd[i] -= 1;
      trial.edge_bwd[i] -= 1;
      if (!verify_mcpp_solution(g, trial).ok) break;
      out = std::move(trial);
    }
  }
  return out;
}

McppSolution exact_mcpp_oracle(const MixedGraph& g, int max_edges) {
  int ne = static_cast<int>(g.edges().size());
  if (ne > max_edges)
    throw SearchLimitError("instance with " + std::to_string(ne) +
                           " edges too large for the exact oracle");
  if (auto witness = validate_mcpp_instance(g))
    throw InstanceError("not strongly connected: no path from " +
                        std::to_string(witness->first) + " to " +
                        std::to_string(witness->second));
  if (g.element_count() == 0) return McppSolution::zero(g);

  long long cap = solution_weight(g, naive_mcpp_solution(g)) + 1;
  int n = g.vertex_count();
  std::optional<McppSolution> best;
  long long best_weight = 0;

  std::vector<int> mode(ne, 0);  // 0 fwd-only, 1 bwd-only, 2 both
  for (;;) {
    McppSolution base = McppSolution::zero(g);
    for (size_t i = 0; i < g.arcs().size(); ++i) base.arc_count[i] = 1;
    for (int i = 0; i < ne; ++i) {
      if (mode[i] == 0) base.edge_fwd[i] = 1;
      else if (mode[i] == 1) base.edge_bwd[i] = 1;
      else base.edge_fwd[i] = base.edge_bwd[i] = 1;
    }
    // Residual balancing by min-cost circulation over the allowed extras.
    std::vector<long long> div(n, 0);  // required out_extra - in_extra
    for (size_t i = 0; i < g.arcs().size(); ++i) {
      div[g.arcs()[i].head] += 1;
      div[g.arcs()[i].tail] -= 1;
    }
    for (int i = 0; i < ne; ++i) {
      const Edge& e = g.edges()[i];
      if (mode[i] == 0) {
        div[e.v] += 1;
        div[e.u] -= 1;
      } else if (mode[i] == 1) {
        div[e.u] += 1;
        div[e.v] -= 1;
      }
      // mode 2 contributes equally in both directions
    }
    MinCostFlow mcf(n + 2);
    int src = n, dst = n + 1;
    std::vector<int> arc_edge_id(g.arcs().size(), -1), edge_edge_id(ne, -1);
    for (size_t i = 0; i < g.arcs().size(); ++i)
      arc_edge_id[i] =
          mcf.add_edge(g.arcs()[i].tail, g.arcs()[i].head, cap, g.arcs()[i].weight);
    for (int i = 0; i < ne; ++i) {
      const Edge& e = g.edges()[i];
      if (mode[i] == 0) edge_edge_id[i] = mcf.add_edge(e.u, e.v, cap, e.weight);
      else if (mode[i] == 1) edge_edge_id[i] = mcf.add_edge(e.v, e.u, cap, e.weight);
    }
    long long need = 0;
    for (int v = 0; v < n; ++v) {
      if (div[v] > 0) {
        mcf.add_edge(src, v, div[v], 0);
        need += div[v];
      } else if (div[v] < 0) {
        mcf.add_edge(v, dst, -div[v], 0);
      }
    }
    auto [flow, cost] = mcf.solve(src, dst);
    (void)cost;
    if (flow == need) {
      McppSolution cand = base;
      for (size_t i = 0; i < g.arcs().size(); ++i)
        cand.arc_count[i] += mcf.flow_on(arc_edge_id[i]);
      for (int i = 0; i < ne; ++i) {
        if (edge_edge_id[i] == -1) continue;
        long long extra = mcf.flow_on(edge_edge_id[i]);
        if (mode[i] == 0) cand.edge_fwd[i] += extra;
        else cand.edge_bwd[i] += extra;
      }
      McppCheck check = verify_mcpp_solution(g, cand);
      if (check.ok && (!best || check.weight < best_weight)) {
        best = std::move(cand);
        best_weight = check.weight;
      }
    }
    // next mode vector
    int j = 0;
    while (j < ne && mode[j] == 2) mode[j++] = 0;
    if (j == ne) break;
    ++mode[j];
  }
  if (!best) throw InstanceError("oracle found no feasible solution");
  return *best;
}

namespace {

long long checked_count(const char* what, long long c) {
  if (c < 0) throw InstanceError(std::string("gadget lifting produced a negative ") + what);
  return c;
}

}  // namespace

std::pair<PbsInstance, CompGadgetMap> build_comp_pbs(const MixedGraph& g,
                                                     const McppSolution& h) {
  McppCheck check = verify_mcpp_solution(g, h);
  if (!check.ok) throw InstanceError("solution does not verify: " + check.why);
  for (size_t i = 0; i < g.edges().size(); ++i)
    if (h.edge_fwd[i] >= 1 && h.edge_bwd[i] >= 1 && h.edge_fwd[i] + h.edge_bwd[i] > 2)
      throw InstanceError("solution is not normalized at edge " +
                          std::to_string(g.edges()[i].id));
  long long M = check.weight;
  PbsInstance p(g.vertex_count());
  CompGadgetMap map;
  map.M = M;

  for (size_t i = 0; i < g.arcs().size(); ++i) {
    const Arc& a = g.arcs()[i];
    long long t = h.arc_count[i];
    CompGadget gd;
    gd.kind = CompGadget::ArcGadget;
    gd.element = a.id;
    gd.u = a.tail;
    gd.v = a.head;
    gd.flipped = false;
    gd.t = t;
    for (long long x = 0; x < t - 1; ++x) gd.neg_vu.push_back(p.add_arc(a.head, a.tail, -1));
    for (long long x = 0; x < M - t; ++x) gd.pos_uv.push_back(p.add_arc(a.tail, a.head, 1));
    map.gadgets.push_back(std::move(gd));
  }
  for (size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edges()[i];
    long long f = h.edge_fwd[i], b = h.edge_bwd[i];
    CompGadget gd;
    gd.element = e.id;
    if (f >= 1 && b >= 1) {
      gd.kind = CompGadget::EdgeBothWays;
      gd.u = e.u;
      gd.v = e.v;
      gd.flipped = false;
      gd.t = f;
      gd.s = b;
      for (long long x = 0; x < M - 1; ++x) gd.pos_uv.push_back(p.add_arc(e.u, e.v, 1));
      for (long long x = 0; x < M - 1; ++x) gd.pos_vu.push_back(p.add_arc(e.v, e.u, 1));
      gd.forbidden[0] = p.add_arc(e.u, e.v, -1);
      gd.forbidden[1] = p.add_arc(e.v, e.u, -1);
      p.add_forbidden_pair(gd.forbidden[0], gd.forbidden[1]);
    } else {
      gd.kind = CompGadget::EdgeOneWay;
      gd.flipped = (f == 0);
      gd.u = gd.flipped ? e.v : e.u;
      gd.v = gd.flipped ? e.u : e.v;
      gd.t = gd.flipped ? b : f;
      gd.s = 0;
      gd.double_vu[0] = p.add_arc(gd.v, gd.u, 0);
      gd.double_vu[1] = p.add_arc(gd.v, gd.u, 0);
      p.add_double_pair(gd.double_vu[0], gd.double_vu[1]);
      for (long long x = 0; x < gd.t - 1; ++x) gd.neg_vu.push_back(p.add_arc(gd.v, gd.u, -1));
      for (long long x = 0; x < M - gd.t; ++x) gd.pos_uv.push_back(p.add_arc(gd.u, gd.v, 1));
      for (long long x = 0; x < M - 1; ++x) gd.pos_vu.push_back(p.add_arc(gd.v, gd.u, 1));
    }
    map.gadgets.push_back(std::move(gd));
  }
  return {std::move(p), std::move(map)};
}

McppSolution apply_improvement(const MixedGraph& g, const McppSolution& h,
                               const ArcSelection& d, const CompGadgetMap& map) {
  McppCheck pre = verify_mcpp_solution(g, h);
  if (!pre.ok) throw InstanceError("solution does not verify: " + pre.why);
  McppSolution out = h;
  long long selection_total = 0;
  size_t covered = 0;
  auto chosen = [&](ArcId a) { return a >= 0 && d.contains(a); };

  for (const auto& gd : map.gadgets) {
    long long nneg = 0, puv = 0, pvu = 0;
    for (ArcId a : gd.neg_vu)
      if (chosen(a)) ++nneg;
    for (ArcId a : gd.pos_uv)
      if (chosen(a)) ++puv;
    for (ArcId a : gd.pos_vu)
      if (chosen(a)) ++pvu;
    bool dbl = false;
    if (gd.double_vu[0] != -1) {
      int used = (chosen(gd.double_vu[0]) ? 1 : 0) + (chosen(gd.double_vu[1]) ? 1 : 0);
      if (used == 1) throw InstanceError("selection breaks a double pair");
      dbl = used == 2;
    }
    bool forb_uv = chosen(gd.forbidden[0]);
    bool forb_vu = chosen(gd.forbidden[1]);
    if (forb_uv && forb_vu) throw InstanceError("selection uses both arcs of a forbidden pair");
    covered += nneg + puv + pvu + (dbl ? 2 : 0) + (forb_uv ? 1 : 0) + (forb_vu ? 1 : 0);

    long long w_g = puv + pvu - nneg - (forb_uv ? 1 : 0) - (forb_vu ? 1 : 0);
    selection_total += w_g;

    // Element index within its kind.
    auto arc_index = [&](ElementId el) {
      for (size_t i = 0; i < g.arcs().size(); ++i)
        if (g.arcs()[i].id == el) return i;
      throw InstanceError("gadget references unknown arc element");
    };
    auto edge_index = [&](ElementId el) {
      for (size_t i = 0; i < g.edges().size(); ++i)
        if (g.edges()[i].id == el) return i;
      throw InstanceError("gadget references unknown edge element");
    };

    switch (gd.kind) {
      case CompGadget::ArcGadget: {
        size_t i = arc_index(gd.element);
        long long nt = gd.t + puv - nneg;
        if (nt < 1) throw InstanceError("gadget lifting uncovered an arc");
        out.arc_count[i] = nt;
        break;
      }
      case CompGadget::EdgeOneWay: {
        size_t i = edge_index(gd.element);
        long long nt = checked_count("count", gd.t + puv - nneg - (dbl ? 1 : 0));
        long long ns = checked_count("count", pvu + (dbl ? 1 : 0));
        if (nt + ns < 1) throw InstanceError("gadget lifting uncovered an edge");
        out.edge_fwd[i] = gd.flipped ? ns : nt;
        out.edge_bwd[i] = gd.flipped ? nt : ns;
        break;
      }
      case CompGadget::EdgeBothWays: {
        size_t i = edge_index(gd.element);
        long long nt = checked_count("count", 1 + puv - (forb_vu ? 1 : 0));
        long long ns = checked_count("count", 1 + pvu - (forb_uv ? 1 : 0));
        if (nt + ns < 1) throw InstanceError("gadget lifting uncovered an edge");
        out.edge_fwd[i] = nt;
        out.edge_bwd[i] = ns;
        break;
      }
    }
  }
  if (covered != d.size())
    throw InstanceError("selection references arcs outside the gadget map");
  if (selection_total >= 0)
    throw InstanceError("selection is not improving (weight " +
                        std::to_string(selection_total) + ")");
  McppCheck post = verify_mcpp_solution(g, out);
  if (!post.ok) throw InstanceError("lifted solution does not verify: " + post.why);
  if (post.weight != pre.weight + selection_total)
    throw InstanceError("lifted solution weight mismatch");
  return out;
}

McppSolveResult solve_mcpp_treedepth(const MixedGraph& g, const FptOptions& fpt) {
  for (const auto& a : g.arcs())
    if (a.weight != 1) throw InstanceError("tree-depth solver requires unit weights");
  for (const auto& e : g.edges())
    if (e.weight != 1) throw InstanceError("tree-depth solver requires unit weights");

  McppSolveResult res;
  McppSolution h = normalize_solution(g, naive_mcpp_solution(g));
  res.initial_weight = solution_weight(g, h);
  long long guard = res.initial_weight + 1;
  for (;;) {
    if (--guard < 0) throw InstanceError("improvement loop exceeded its weight bound");
    auto [p, map] = build_comp_pbs(g, h);
    if (p.arc_count() == 0) break;
    FptResult search = fpt_negative_pbs(p, fpt);
    if (!search.selection) {
      res.optimal = search.complete;
      break;
    }
    h = normalize_solution(g, apply_improvement(g, h, *search.selection, map));
    ++res.iterations;
  }
  res.solution = std::move(h);
  return res;
}

}  // namespace postman
