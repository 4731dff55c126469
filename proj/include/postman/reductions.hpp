#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "postman/gadgets.hpp"
#include "postman/graph.hpp"
#include "postman/mcpp.hpp"
#include "postman/pathwidth.hpp"

namespace postman {

// ---- k-Multicolored-Clique -> PBS (Theorem-2 construction) ----

// One CheckEdge input block: the r left (right) input arcs tied to edge e_r.
struct CheckEdgeBlock {
  int edge_index = 0;          // r
  VertexId vertex_left = -1;   // endpoint of e_r in V_i
  VertexId vertex_right = -1;  // endpoint of e_r in V_j
  std::vector<int> left_positions, right_positions;  // indices into the Checksum handle
};

struct CliquePbsCert {
  int k = 0;
  ColoredGraph colored;
  ArcId a_star = -1;
  GadgetHandle start;                                      // Duplication(k)
  std::vector<GadgetHandle> choose_vertex;                 // per class, outputs labeled by
                                                           // class_vertices order
  std::map<std::pair<int, VertexId>, GadgetHandle> assign_vertex;  // (i, v)
  std::map<std::pair<int, VertexId>, std::vector<int>> assign_vertex_labels;  // j order
  std::map<std::tuple<int, VertexId, int>, GadgetHandle> choose_edge;  // (i, v, j)
  std::map<std::tuple<int, VertexId, int>, std::vector<int>> choose_edge_labels;  // e_r order
  std::map<std::tuple<int, VertexId, int, int>, GadgetHandle> assign_edge;  // (i, v, j, r)
  std::map<std::pair<int, int>, GadgetHandle> check_edge;  // (i, j), i < j
  std::map<std::pair<int, int>, std::vector<CheckEdgeBlock>> check_edge_blocks;
  PathDecomposition decomposition;  // built as in the hardness proof
};

// Builds the PBS instance with a single weight -1 arc a*, everything else
// weight 0, no forbidden pairs. Throws when a class is empty, k < 2, or some
// required Choice gadget would have zero outputs.
std::pair<PbsInstance, CliquePbsCert> clique_to_pbs(const ColoredGraph& cg);

// The explicit witness selection for a multicolored clique (one vertex per
// class); properly balanced of weight -1 by construction.
ArcSelection pbs_witness_from_clique(const PbsInstance& p, const CliquePbsCert& cert,
                                     const std::vector<VertexId>& clique);

// Reads the chosen vertex per class off a negative properly balanced
// selection; the result is a multicolored clique.
std::vector<VertexId> clique_from_pbs_solution(const PbsInstance& p,
                                               const CliquePbsCert& cert,
                                               const ArcSelection& s);

// ---- PBS -> MCPP (Theorem-4 construction) ----

// Elements of one heavy arc/edge: a single weighted element in compressed
// mode, a unit path (stored in order from the heavy element's tail, edges
// oriented along the path) when expanded.
struct HeavyElement {
  std::vector<ElementId> elements;
};

struct McppGadget {
  enum Kind { ZeroArc, NegArc, DoubleArc } kind;
  ArcId pbs_arc = -1, pbs_arc2 = -1;  // DoubleArc covers a pair
  VertexId u = -1, v = -1, z = -1, w = -1;
  ElementId std_zu = -1, std_zv = -1, std_zw = -1, std_vw = -1;
  HeavyElement heavy_uz1, heavy_uz2, heavy_vz;         // ZeroArc
  HeavyElement heavy_wz, heavy_wv1, heavy_wv2;         // NegArc (plus heavy_uz1/2)
  HeavyElement heavy_arc_uv, heavy_edge_uv;            // DoubleArc
};

struct McppReductionCert {
  long long M = 0, W = 0;
  int m1 = 0, m2 = 0;
  bool expanded = false;
  std::vector<McppGadget> gadgets;
  PathDecomposition decomposition;  // width <= width(input decomposition) + 5
};

// Requires Theorem-2 output form: exactly one weight -1 arc outside double
// pairs, all other arcs weight 0, no forbidden pairs. M = m1 + 3,
// W = (3*m1 + 2*m2 + 5)*M + 3*m1 + 5. When input_dec is absent, a
// decomposition of the input is computed first.
std::tuple<MixedGraph, long long, McppReductionCert> pbs_to_mcpp(
    const PbsInstance& p, bool expand_heavy,
    const PathDecomposition* input_dec = nullptr);

// Active/passive assembly per gadget: weight = W + selection_weight(s).
McppSolution mcpp_solution_from_pbs_solution(const McppReductionCert& cert,
                                             const MixedGraph& g,
                                             const std::optional<ArcSelection>& s);

// Reads each gadget's canonical state off a verified solution traversing
// every heavy element exactly once; empty selection = all passive.
ArcSelection pbs_solution_from_mcpp_solution(const McppReductionCert& cert,
                                             const MixedGraph& g, const McppSolution& sol);

// ---- JSON sidecar serialization for certificates and solutions ----

std::string clique_cert_to_json(const CliquePbsCert& cert);
CliquePbsCert clique_cert_from_json(const std::string& text);
std::string mcpp_cert_to_json(const McppReductionCert& cert);
McppReductionCert mcpp_cert_from_json(const std::string& text);
std::string selection_to_json(const ArcSelection& s);
ArcSelection selection_from_json(const std::string& text);
std::string solution_to_json(const McppSolution& sol);
McppSolution solution_from_json(const std::string& text, const MixedGraph& g);

}  // namespace postman
