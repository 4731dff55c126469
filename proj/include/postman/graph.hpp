#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "postman/errors.hpp"

namespace postman {

using VertexId = int;
using ElementId = int;  // shared id space over edges and arcs of a MixedGraph
using ArcId = int;      // PBS arc ids

// Undirected edge of a mixed graph. The stored (u, v) order fixes the
// "forward" traversal direction used by solution counts.
struct Edge {
  ElementId id;
  VertexId u, v;
  long long weight;
};

struct Arc {
  ElementId id;
  VertexId tail, head;
  long long weight;
};

// An MCPP instance: vertices 0..n-1, undirected edges and directed arcs with
// positive integer weights. Element ids are dense over edges+arcs in
// insertion order. Parallel elements are allowed, self-loops are not.
class MixedGraph {
 public:
  explicit MixedGraph(int vertex_count = 0);

  int vertex_count() const { return vertex_count_; }
  int element_count() const { return static_cast<int>(edges_.size() + arcs_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  ElementId add_edge(VertexId u, VertexId v, long long weight = 1);
  ElementId add_arc(VertexId tail, VertexId head, long long weight = 1);

  long long total_weight() const;

  bool operator==(const MixedGraph& o) const;

 private:
  void check_endpoint(VertexId v) const;

  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<Arc> arcs_;
};

struct PbsArc {
  ArcId id;
  VertexId tail, head;
  long long weight;
};

enum class PairKind { None, Double, Forbidden };

// A PBS instance: directed multigraph with integer weights, double-arc pairs
// (same tail, same head; use both or neither) and forbidden pairs (mutually
// reverse; use at most one). Pairs are disjoint and each arc lies in at most
// one pair.
class PbsInstance {
 public:
  explicit PbsInstance(int vertex_count = 0);

  int vertex_count() const { return vertex_count_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<PbsArc>& arcs() const { return arcs_; }
  const PbsArc& arc(ArcId a) const { return arcs_.at(a); }
  const std::vector<std::pair<ArcId, ArcId>>& double_pairs() const { return double_pairs_; }
  const std::vector<std::pair<ArcId, ArcId>>& forbidden_pairs() const { return forbidden_pairs_; }

  ArcId add_arc(VertexId tail, VertexId head, long long weight);
  void add_double_pair(ArcId a, ArcId b);
  void add_forbidden_pair(ArcId a, ArcId b);

  PairKind pair_kind(ArcId a) const { return pair_kind_.at(a); }
  // Partner arc within a double/forbidden pair, -1 for unpaired arcs.
  ArcId pair_partner(ArcId a) const { return pair_partner_.at(a); }

  bool operator==(const PbsInstance& o) const;

 private:
  void check_arc_id(ArcId a) const;
  void check_unpaired(ArcId a) const;

  int vertex_count_ = 0;
  std::vector<PbsArc> arcs_;
  std::vector<std::pair<ArcId, ArcId>> double_pairs_;
  std::vector<std::pair<ArcId, ArcId>> forbidden_pairs_;
  std::vector<PairKind> pair_kind_;
  std::vector<ArcId> pair_partner_;
};

// A candidate properly balanced subgraph: a set of arc ids (each arc used at
// most once). Kept sorted and duplicate-free.
struct ArcSelection {
  std::vector<ArcId> ids;

  ArcSelection() = default;
  explicit ArcSelection(std::vector<ArcId> raw);

  bool contains(ArcId a) const;
  bool empty() const { return ids.empty(); }
  size_t size() const { return ids.size(); }

  bool operator==(const ArcSelection& o) const { return ids == o.ids; }
};

// k-Multicolored Clique instance: vertex classes V_1..V_k (disjoint, each an
// independent set) and cross-class edges carrying 1-based indices in input
// order (the e_1..e_m enumeration).
struct ColoredEdge {
  int index;  // 1-based
  VertexId u, v;
};

class ColoredGraph {
 public:
  ColoredGraph(int k, int vertex_count);

  int k() const { return k_; }
  int vertex_count() const { return vertex_count_; }
  int class_of(VertexId v) const { return class_of_.at(v); }       // 1..k
  const std::vector<VertexId>& class_vertices(int c) const;        // c in 1..k
  const std::vector<ColoredEdge>& edges() const { return edges_; }

  void assign_class(VertexId v, int c);
  int add_edge(VertexId u, VertexId v);  // returns the 1-based index

  bool has_edge(VertexId u, VertexId v) const;
  // Neighbors of v inside class c, as edges (sorted by index).
  std::vector<ColoredEdge> edges_from_into(VertexId v, int c) const;
  // All vertices assigned? (parse-time completeness check)
  void check_complete() const;

  bool operator==(const ColoredGraph& o) const;

 private:
  int k_;
  int vertex_count_;
  std::vector<int> class_of_;  // 0 = unassigned
  std::vector<std::vector<VertexId>> classes_;  // index 1..k
  std::vector<ColoredEdge> edges_;
};

// Strong-connectivity check for MCPP instances: edges count as arc pairs.
// Returns std::nullopt when strongly connected, otherwise a witness ordered
// pair (x, y) with no x->y path.
std::optional<std::pair<VertexId, VertexId>> validate_mcpp_instance(const MixedGraph& g);

// Lightweight simple undirected graph used by the width/depth machinery.
struct SimpleGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;

  explicit SimpleGraph(int n_ = 0) : n(n_), adj(n_) {}
  void add_edge(int u, int v);  // ignores self-loops and duplicates
  bool has_edge(int u, int v) const;
  std::vector<std::vector<int>> components() const;
};

SimpleGraph underlying_graph(const MixedGraph& g);
SimpleGraph underlying_graph(const PbsInstance& p);

}  // namespace postman
