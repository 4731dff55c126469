#include "postman/gadgets.hpp"

#include <algorithm>

namespace postman {

PbsBuilder PbsBuilder::from_instance(const PbsInstance& p) {
  PbsBuilder b;
  for (int v = 0; v < p.vertex_count(); ++v) b.add_vertex();
  for (const auto& a : p.arcs()) b.add_arc(a.tail, a.head, a.weight);
  for (const auto& [x, y] : p.double_pairs()) b.add_double_pair(x, y);
  for (const auto& [x, y] : p.forbidden_pairs()) b.add_forbidden_pair(x, y);
  return b;
}

VertexId PbsBuilder::add_vertex() {
  VertexId v = static_cast<VertexId>(parent_.size());
  parent_.push_back(v);
  indeg_.push_back(0);
  outdeg_.push_back(0);
  return v;
}

int PbsBuilder::find_mut(VertexId v) {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

int PbsBuilder::find(VertexId v) const {
  while (parent_[v] != v) v = parent_[v];
  return v;
}

ArcId PbsBuilder::add_arc(VertexId tail, VertexId head, long long weight) {
  if (tail < 0 || tail >= static_cast<int>(parent_.size()) || head < 0 ||
      head >= static_cast<int>(parent_.size()))
    throw InstanceError("arc endpoint out of range");
  int t = find_mut(tail), h = find_mut(head);
  if (t == h) throw InstanceError("arc would be a self-loop");
  ArcId id = static_cast<ArcId>(arcs_.size());
  arcs_.push_back({tail, head, weight});
  pair_kind_.push_back(PairKind::None);
  ++outdeg_[t];
  ++indeg_[h];
  return id;
}

void PbsBuilder::add_double_pair(ArcId a, ArcId b) {
  if (pair_kind_.at(a) != PairKind::None || pair_kind_.at(b) != PairKind::None)
    throw InstanceError("arc already belongs to a pair");
  if (tail(a) != tail(b) || head(a) != head(b))
    throw InstanceError("double pair endpoints differ");
  doubles_.emplace_back(a, b);
  pair_kind_[a] = pair_kind_[b] = PairKind::Double;
}

void PbsBuilder::add_forbidden_pair(ArcId a, ArcId b) {
  if (pair_kind_.at(a) != PairKind::None || pair_kind_.at(b) != PairKind::None)
    throw InstanceError("arc already belongs to a pair");
  if (tail(a) != head(b) || head(a) != tail(b))
    throw InstanceError("forbidden pair arcs are not mutually reverse");
  forbiddens_.emplace_back(a, b);
  pair_kind_[a] = pair_kind_[b] = PairKind::Forbidden;
}

void PbsBuilder::join(ArcId a, ArcId b) {
  if (a == b) throw InstanceError("cannot join an arc with itself");
  if (pair_kind_.at(a) != PairKind::None || pair_kind_.at(b) != PairKind::None)
    throw InstanceError("joined arc already belongs to a pair");
  int ta = find_mut(arcs_[a].tail), ha = find_mut(arcs_[a].head);
  int tb = find_mut(arcs_[b].tail), hb = find_mut(arcs_[b].head);
  for (int v : {ta, ha, tb, hb})
    if (indeg_[v] != 1 || outdeg_[v] != 1)
      throw InstanceError("join endpoint " + std::to_string(v) +
                          " does not have in-degree and out-degree 1");
  if (ta == tb || ha == hb) throw InstanceError("arcs already share endpoints");
  parent_[tb] = ta;
  indeg_[ta] += indeg_[tb];
  outdeg_[ta] += outdeg_[tb];
  parent_[hb] = ha;
  indeg_[ha] += indeg_[hb];
  outdeg_[ha] += outdeg_[hb];
  doubles_.emplace_back(a, b);
  pair_kind_[a] = pair_kind_[b] = PairKind::Double;
}

PbsInstance PbsBuilder::finalize(std::vector<VertexId>* vertex_map) const {
  std::vector<VertexId> map(parent_.size(), -1);
  int next = 0;
  for (size_t v = 0; v < parent_.size(); ++v) {
    int r = find(static_cast<VertexId>(v));
    if (map[r] == -1) map[r] = next++;
    map[v] = map[r];
  }
  PbsInstance p(next);
  for (const auto& a : arcs_) p.add_arc(map[find(a.tail)], map[find(a.head)], a.weight);
  for (const auto& [x, y] : doubles_) p.add_double_pair(x, y);
  for (const auto& [x, y] : forbiddens_) p.add_forbidden_pair(x, y);
  if (vertex_map) *vertex_map = map;
  return p;
}

GadgetHandle append_gadget(PbsBuilder& b, GadgetKind kind, const std::vector<int>& sizes,
                           long long input_weight) {
  GadgetHandle h;
  h.kind = kind;
  switch (kind) {
    case GadgetKind::Duplication: {
      if (sizes.size() != 1 || sizes[0] < 1)
        throw InstanceError("Duplication gadget needs t >= 1");
      int t = sizes[0];
      VertexId x = b.add_vertex(), y = b.add_vertex();
      // cycle x y u_1 v_1 ... u_t v_t x
      h.input = b.add_arc(x, y, input_weight);
      h.all_arcs.push_back(h.input);
      VertexId prev = y;
      for (int i = 0; i < t; ++i) {
        VertexId u = b.add_vertex(), v = b.add_vertex();
        h.all_arcs.push_back(b.add_arc(prev, u, 0));
        ArcId out = b.add_arc(u, v, 0);
        h.outputs.push_back(out);
        h.all_arcs.push_back(out);
        prev = v;
      }
      h.all_arcs.push_back(b.add_arc(prev, x, 0));
      break;
    }
    case GadgetKind::Choice: {
      if (sizes.size() != 1 || sizes[0] < 1)
        throw InstanceError("Choice gadget needs t >= 1");
      int t = sizes[0];
      VertexId w = b.add_vertex(), x = b.add_vertex(), y = b.add_vertex(), z = b.add_vertex();
      h.input_path[0] = b.add_arc(w, x, 0);
      h.input = h.input_path[1] = b.add_arc(x, y, input_weight);
      h.input_path[2] = b.add_arc(y, z, 0);
      for (int i = 0; i < t; ++i) {
        VertexId u = b.add_vertex(), v = b.add_vertex();
        std::array<ArcId, 3> run;
        run[0] = b.add_arc(z, u, 0);
        run[1] = b.add_arc(u, v, 0);
        run[2] = b.add_arc(v, w, 0);
        h.outputs.push_back(run[1]);
        h.output_paths.push_back(run);
      }
      break;
    }
    case GadgetKind::Checksum: {
      if (sizes.size() != 2 || sizes[0] < 1 || sizes[1] < 1)
        throw InstanceError("Checksum gadget needs t_l >= 1 and t_r >= 1");
      int tl = sizes[0], tr = sizes[1];
      VertexId w = b.add_vertex(), z = b.add_vertex();
      for (int i = 0; i < tl; ++i) {
        VertexId x = b.add_vertex(), y = b.add_vertex();
        std::array<ArcId, 3> run;
        run[0] = b.add_arc(w, x, 0);
        run[1] = b.add_arc(x, y, 0);
        run[2] = b.add_arc(y, z, 0);
        h.left_inputs.push_back(run[1]);
        h.left_paths.push_back(run);
      }
      for (int i = 0; i < tr; ++i) {
        VertexId u = b.add_vertex(), v = b.add_vertex();
        std::array<ArcId, 3> run;
        run[0] = b.add_arc(z, u, 0);
        run[1] = b.add_arc(u, v, 0);
        run[2] = b.add_arc(v, w, 0);
        h.right_inputs.push_back(run[1]);
        h.right_paths.push_back(run);
      }
      break;
    }
  }
  return h;
}

std::pair<PbsInstance, GadgetHandle> build_gadget(GadgetKind kind,
                                                  const std::vector<int>& sizes) {
  PbsBuilder b;
  GadgetHandle h = append_gadget(b, kind, sizes);
  return {b.finalize(), h};
}

PbsInstance join_arcs(const PbsInstance& d, ArcId a, ArcId b) {
  if (a < 0 || a >= d.arc_count() || b < 0 || b >= d.arc_count())
    throw InstanceError("join references unknown arc id");
  PbsBuilder builder = PbsBuilder::from_instance(d);
  builder.join(a, b);
  return builder.finalize();
}

std::vector<ArcId> gadget_active_arcs(const GadgetHandle& h) {
  if (h.kind != GadgetKind::Duplication)
    throw InstanceError("active-arcs shortcut applies to Duplication gadgets");
  return h.all_arcs;
}

std::vector<ArcId> gadget_choice_arcs(const GadgetHandle& h, int output_index) {
  if (h.kind != GadgetKind::Choice) throw InstanceError("not a Choice gadget");
  if (output_index < 0 || output_index >= static_cast<int>(h.output_paths.size()))
    throw InstanceError("Choice output index out of range");
  std::vector<ArcId> out(h.input_path.begin(), h.input_path.end());
  const auto& run = h.output_paths[output_index];
  out.insert(out.end(), run.begin(), run.end());
  return out;
}

std::vector<ArcId> gadget_checksum_arcs(const GadgetHandle& h,
                                        const std::vector<int>& left_indices,
                                        const std::vector<int>& right_indices) {
  if (h.kind != GadgetKind::Checksum) throw InstanceError("not a Checksum gadget");
  if (left_indices.size() != right_indices.size())
    throw InstanceError("Checksum subgraph needs equally many left and right inputs");
  std::vector<ArcId> out;
  for (int i : left_indices) {
    const auto& run = h.left_paths.at(i);
    out.insert(out.end(), run.begin(), run.end());
  }
  for (int i : right_indices) {
    const auto& run = h.right_paths.at(i);
    out.insert(out.end(), run.begin(), run.end());
  }
  return out;
}

}  // namespace postman
