#pragma once

#include <array>
#include <vector>

#include "postman/graph.hpp"

namespace postman {

enum class GadgetKind { Duplication, Choice, Checksum };

// Arc-id bookkeeping for one gadget. Input/output arc endpoints all have
// in-degree and out-degree 1 inside the gadget, as the join operation
// requires. The *_paths triples hold (entry arc, input/output arc, exit arc)
// of the three-arc runs through Choice and Checksum gadgets, used to spell
// out canonical properly balanced subgraphs.
struct GadgetHandle {
  GadgetKind kind;
  ArcId input = -1;
  std::vector<ArcId> outputs;
  std::vector<ArcId> all_arcs;                     // Duplication: full cycle order
  std::array<ArcId, 3> input_path{-1, -1, -1};     // Choice: w->x, x->y, y->z
  std::vector<std::array<ArcId, 3>> output_paths;  // Choice: z->u_i, u_iv_i, v_i->w
  std::vector<ArcId> left_inputs, right_inputs;    // Checksum
  std::vector<std::array<ArcId, 3>> left_paths, right_paths;
};

// Incremental PBS construction with vertex identification. Arc ids are
// stable: finalize() only renames vertices.
class PbsBuilder {
 public:
  PbsBuilder() = default;
  static PbsBuilder from_instance(const PbsInstance& p);

  VertexId add_vertex();
  ArcId add_arc(VertexId tail, VertexId head, long long weight);
  void add_double_pair(ArcId a, ArcId b);
  void add_forbidden_pair(ArcId a, ArcId b);

  // Lemma-1 join: identify tails, identify heads, keep both arcs, record a
  // double pair. Requires all four endpoints to have in- and out-degree 1 and
  // both arcs unpaired.
  void join(ArcId a, ArcId b);

  int find(VertexId v) const;  // current representative
  VertexId tail(ArcId a) const { return find(arcs_[a].tail); }
  VertexId head(ArcId a) const { return find(arcs_[a].head); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }

  // Compacts vertices (first-appearance order of representatives) and builds
  // the instance. vertex_map (if given) receives raw id -> final id.
  PbsInstance finalize(std::vector<VertexId>* vertex_map = nullptr) const;

 private:
  struct RawArc {
    VertexId tail, head;
    long long weight;
  };
  int find_mut(VertexId v);
  std::vector<RawArc> arcs_;
  mutable std::vector<VertexId> parent_;
  std::vector<int> indeg_, outdeg_;  // per representative, current
  std::vector<std::pair<ArcId, ArcId>> doubles_, forbiddens_;
  std::vector<PairKind> pair_kind_;
};

// Appends one gadget (all arcs weight `input_weight` for the input arc, 0
// elsewhere) to the builder. Duplication/Choice take sizes = {t}; Checksum
// takes sizes = {t_left, t_right}.
GadgetHandle append_gadget(PbsBuilder& b, GadgetKind kind, const std::vector<int>& sizes,
                           long long input_weight = 0);

// Standalone gadget as its own instance (spec operation).
std::pair<PbsInstance, GadgetHandle> build_gadget(GadgetKind kind,
                                                  const std::vector<int>& sizes);

// Join two arcs of an existing instance (spec operation): returns the merged
// instance with compacted vertex ids.
PbsInstance join_arcs(const PbsInstance& d, ArcId a, ArcId b);

// Canonical properly balanced subgraph of one gadget realizing the given
// interface choice, as arc ids:
//  - Duplication: active (input + every output + connectors) or empty
//  - Choice: input run + the selected output's run
//  - Checksum: runs of the chosen left/right inputs (counts must match)
std::vector<ArcId> gadget_active_arcs(const GadgetHandle& h);
std::vector<ArcId> gadget_choice_arcs(const GadgetHandle& h, int output_index);
std::vector<ArcId> gadget_checksum_arcs(const GadgetHandle& h,
                                        const std::vector<int>& left_indices,
                                        const std::vector<int>& right_indices);

}  // namespace postman
