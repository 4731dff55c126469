#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "postman/graph.hpp"
#include "postman/patterns.hpp"
#include "postman/pbs.hpp"

namespace postman {

// Traversal counts of a candidate closed walk: count per arc, and per edge a
// count in each direction (forward = the edge's stored (u, v) orientation).
struct McppSolution {
  std::vector<long long> arc_count;   // by arc order in MixedGraph::arcs()
  std::vector<long long> edge_fwd;    // by edge order in MixedGraph::edges()
  std::vector<long long> edge_bwd;

  static McppSolution zero(const MixedGraph& g);
};

struct McppCheck {
  bool ok = false;
  std::string why;          // violated condition when !ok
  long long weight = 0;     // defined when ok
};

// Coverage (every element at least once), balance at every vertex, and
// connectivity of the traversal support: exactly Eulerian-circuit existence.
McppCheck verify_mcpp_solution(const MixedGraph& g, const McppSolution& sol);

long long solution_weight(const MixedGraph& g, const McppSolution& sol);

struct WalkStep {
  ElementId element;
  bool forward;  // arcs: always true; edges: stored orientation or reverse
};
using ClosedWalk = std::vector<WalkStep>;

// Eulerian circuit over the traversal multiset; realizes exactly sol's counts.
ClosedWalk extract_closed_walk(const MixedGraph& g, const McppSolution& sol);

// The per-element closed-walk union: every edge once in each direction, every
// arc plus a simple return path. Total count per element <= m+1.
McppSolution naive_mcpp_solution(const MixedGraph& g);

// Removes opposite traversal pairs from over-traversed edges while the
// solution stays verified; afterwards every both-direction edge has
// fwd = bwd = 1. Weight never increases.
McppSolution normalize_solution(const MixedGraph& g, const McppSolution& sol);

// Exact minimum-weight solution: per edge, one of the three minimal modes
// (forward-only, backward-only, once each way), residual balancing by
// min-cost circulation, best verified result. Edge count limited.
McppSolution exact_mcpp_oracle(const MixedGraph& g, int max_edges = 12);

// comp-MCPP gadget bookkeeping for one original element.
struct CompGadget {
  enum Kind { ArcGadget, EdgeOneWay, EdgeBothWays } kind;
  ElementId element;
  VertexId u, v;      // gadget orientation: traversals counted u->v (t) and v->u (s)
  bool flipped;       // EdgeOneWay: true when u,v is the reverse of the stored edge
  long long t = 0, s = 0;
  std::vector<ArcId> neg_vu;   // weight -1 arcs v->u
  std::vector<ArcId> pos_uv;   // weight +1 arcs u->v
  std::vector<ArcId> pos_vu;   // weight +1 arcs v->u
  std::array<ArcId, 2> double_vu{-1, -1};    // EdgeOneWay: weight-0 double pair v->u
  std::array<ArcId, 2> forbidden{-1, -1};    // EdgeBothWays: [0] u->v, [1] v->u
};

struct CompGadgetMap {
  long long M = 0;
  std::vector<CompGadget> gadgets;
};

// The three-case reduction from a normalized solution h to a restricted-form
// PBS instance on V(g), with M = weight(h).
std::pair<PbsInstance, CompGadgetMap> build_comp_pbs(const MixedGraph& g,
                                                     const McppSolution& h);

// Lifts a negative properly balanced selection back to a strictly cheaper
// verified solution: weight(result) = weight(h) + selection_weight(d).
McppSolution apply_improvement(const MixedGraph& g, const McppSolution& h,
                               const ArcSelection& d, const CompGadgetMap& map);

struct McppSolveResult {
  McppSolution solution;
  int iterations = 0;
  bool optimal = true;  // false = locally optimal under the arc cap
  long long initial_weight = 0;
};

// Improvement loop: naive start, normalize, build comp-PBS, FPT search,
// apply, repeat until no negative selection is found.
McppSolveResult solve_mcpp_treedepth(const MixedGraph& g, const FptOptions& fpt = {});

}  // namespace postman
