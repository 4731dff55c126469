#include "postman/reductions.hpp"

#include <algorithm>

#include <json.hpp>

#include "postman/io.hpp"
#include "postman/pbs.hpp"

namespace postman {

using nlohmann::json;

namespace {

// Bag sequences of the hand path decompositions used by the hardness proof:
// a cycle has width 2, Choice has width 3.
std::vector<std::vector<VertexId>> cycle_bags(const std::vector<VertexId>& cyc) {
  std::vector<std::vector<VertexId>> bags;
  for (size_t i = 1; i + 1 < cyc.size(); ++i)
    bags.push_back({cyc[0], cyc[i], cyc[i + 1]});
  if (bags.empty()) bags.push_back(cyc);
  return bags;
}

struct SpliceOp {
  std::vector<VertexId> anchor;               // raw builder ids
  std::vector<std::vector<VertexId>> bags;    // raw builder ids
};

std::vector<VertexId> resolve_bag(const std::vector<VertexId>& bag,
                                  const std::vector<VertexId>& vmap) {
  std::vector<VertexId> out;
  for (VertexId v : bag) {
    VertexId r = vmap[v];
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return out;
}

}  // namespace

std::pair<PbsInstance, CliquePbsCert> clique_to_pbs(const ColoredGraph& cg) {
  cg.check_complete();
  int k = cg.k();
  if (k < 2) throw InstanceError("construction needs k >= 2");
  for (int i = 1; i <= k; ++i)
    if (cg.class_vertices(i).empty())
      throw InstanceError("class " + std::to_string(i) + " is empty");

  PbsBuilder b;
  CliquePbsCert cert{.k = k, .colored = cg};
  std::vector<std::vector<VertexId>> start_bags;
  std::vector<SpliceOp> splices;
  std::vector<VertexId> checkedge_hubs;  // raw w, z of every CheckEdge gadget

  auto dup_bags = [&](const GadgetHandle& h) {
    std::vector<VertexId> cyc;
    cyc.push_back(b.tail(h.all_arcs[0]));
    for (ArcId a : h.all_arcs) cyc.push_back(b.head(a));
    cyc.pop_back();  // last head closes the cycle
    return cycle_bags(cyc);
  };
  auto choice_bags = [&](const GadgetHandle& h) {
    VertexId w = b.tail(h.input_path[0]), x = b.head(h.input_path[0]);
    VertexId y = b.head(h.input_path[1]), z = b.head(h.input_path[2]);
    std::vector<std::vector<VertexId>> bags;
    bags.push_back({w, z, x, y});
    for (const auto& run : h.output_paths)
      bags.push_back({w, z, b.head(run[0]), b.head(run[1])});
    return bags;
  };
  auto anchor_of = [&](ArcId a) {
    return std::vector<VertexId>{b.tail(a), b.head(a)};
  };

  // Start: Duplication with input a* of weight -1 and k labeled outputs.
  cert.start = append_gadget(b, GadgetKind::Duplication, {k}, -1);
  cert.a_star = cert.start.input;
  start_bags = dup_bags(cert.start);

  // ChooseVertex(i), outputs labeled by class_vertices order.
  for (int i = 1; i <= k; ++i) {
    int size = static_cast<int>(cg.class_vertices(i).size());
    GadgetHandle h = append_gadget(b, GadgetKind::Choice, {size});
    splices.push_back({anchor_of(cert.start.outputs[i - 1]), choice_bags(h)});
    b.join(h.input, cert.start.outputs[i - 1]);
    cert.choose_vertex.push_back(h);
  }

  // AssignVertex(i, v): Duplication with k-1 outputs labeled by ascending j.
  for (int i = 1; i <= k; ++i) {
    const auto& verts = cg.class_vertices(i);
    for (size_t vi = 0; vi < verts.size(); ++vi) {
      GadgetHandle h = append_gadget(b, GadgetKind::Duplication, {k - 1});
      ArcId out = cert.choose_vertex[i - 1].outputs[vi];
      splices.push_back({anchor_of(out), dup_bags(h)});
      b.join(h.input, out);
      std::vector<int> labels;
      for (int j = 1; j <= k; ++j)
        if (j != i) labels.push_back(j);
      cert.assign_vertex[{i, verts[vi]}] = h;
      cert.assign_vertex_labels[{i, verts[vi]}] = labels;
    }
  }

  // ChooseEdge(i, v, ->j) and AssignEdge(i, v, ->j, e_r).
  for (int i = 1; i <= k; ++i) {
    for (VertexId v : cg.class_vertices(i)) {
      const auto& labels = cert.assign_vertex_labels[{i, v}];
      for (size_t ji = 0; ji < labels.size(); ++ji) {
        int j = labels[ji];
        auto edges = cg.edges_from_into(v, j);
        if (edges.empty())
          throw InstanceError("vertex " + std::to_string(v) + " has no neighbor in class " +
                              std::to_string(j) + "; ChooseEdge would have zero outputs");
        GadgetHandle ce = append_gadget(b, GadgetKind::Choice,
                                        {static_cast<int>(edges.size())});
        ArcId av_out = cert.assign_vertex[{i, v}].outputs[ji];
        splices.push_back({anchor_of(av_out), choice_bags(ce)});
        b.join(ce.input, av_out);
        cert.choose_edge[{i, v, j}] = ce;
        std::vector<int> edge_labels;
        for (const auto& e : edges) edge_labels.push_back(e.index);
        cert.choose_edge_labels[{i, v, j}] = edge_labels;
        for (size_t ei = 0; ei < edges.size(); ++ei) {
          int r = edges[ei].index;
          GadgetHandle ae = append_gadget(b, GadgetKind::Duplication, {r});
          splices.push_back({anchor_of(ce.outputs[ei]), dup_bags(ae)});
          b.join(ae.input, ce.outputs[ei]);
          cert.assign_edge[{i, v, j, r}] = ae;
        }
      }
    }
  }

  // CheckEdge(i, j): Checksum sized by the sum of edge indices between the
  // classes; left blocks joined to Output(i, v, ->j, e_r), right blocks to
  // Output(j, u, ->i, e_r).
  for (int i = 1; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      std::vector<ColoredEdge> between;
      for (const auto& e : cg.edges()) {
        int cu = cg.class_of(e.u), cv = cg.class_of(e.v);
        if ((cu == i && cv == j) || (cu == j && cv == i)) between.push_back(e);
      }
      if (between.empty()) continue;  // unreachable: zero-output errors fire first
      int total = 0;
      for (const auto& e : between) total += e.index;
      GadgetHandle check = append_gadget(b, GadgetKind::Checksum, {total, total});
      checkedge_hubs.push_back(b.tail(check.left_paths[0][0]));  // w
      checkedge_hubs.push_back(b.head(check.left_paths[0][2]));  // z
      std::vector<CheckEdgeBlock> blocks;
      int pos = 0;
      for (const auto& e : between) {
        CheckEdgeBlock blk;
        blk.edge_index = e.index;
        blk.vertex_left = cg.class_of(e.u) == i ? e.u : e.v;
        blk.vertex_right = cg.class_of(e.u) == i ? e.v : e.u;
        const auto& left_src = cert.assign_edge[{i, blk.vertex_left, j, e.index}];
        const auto& right_src = cert.assign_edge[{j, blk.vertex_right, i, e.index}];
        for (int q = 0; q < e.index; ++q) {
          blk.left_positions.push_back(pos + q);
          blk.right_positions.push_back(pos + q);
          b.join(check.left_inputs[pos + q], left_src.outputs[q]);
          b.join(check.right_inputs[pos + q], right_src.outputs[q]);
        }
        pos += e.index;
        blocks.push_back(std::move(blk));
      }
      cert.check_edge[{i, j}] = check;
      cert.check_edge_blocks[{i, j}] = std::move(blocks);
    }
  }

  std::vector<VertexId> vmap;
  PbsInstance p = b.finalize(&vmap);

  // Replay the join-lemma decomposition construction over final vertex ids,
  // then add every CheckEdge hub pair to every bag.
  PathDecomposition dec;
  for (const auto& bag : start_bags) dec.bags.push_back(resolve_bag(bag, vmap));
  for (const auto& op : splices) {
    PathDecomposition ins;
    for (const auto& bag : op.bags) ins.bags.push_back(resolve_bag(bag, vmap));
    splice_decomposition(dec, resolve_bag(op.anchor, vmap), ins);
  }
  std::vector<VertexId> hubs = resolve_bag(checkedge_hubs, vmap);
  for (auto& bag : dec.bags)
    for (VertexId h : hubs)
      if (std::find(bag.begin(), bag.end(), h) == bag.end()) bag.push_back(h);
  cert.decomposition = std::move(dec);
  return {std::move(p), std::move(cert)};
}

namespace {

int index_of_vertex(const ColoredGraph& cg, int cls, VertexId v) {
  const auto& verts = cg.class_vertices(cls);
  for (size_t i = 0; i < verts.size(); ++i)
    if (verts[i] == v) return static_cast<int>(i);
  throw InstanceError("vertex " + std::to_string(v) + " not in class " + std::to_string(cls));
}

int edge_index_between(const ColoredGraph& cg, VertexId a, VertexId b) {
  for (const auto& e : cg.edges())
    if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return e.index;
  throw InstanceError("vertices " + std::to_string(a) + " and " + std::to_string(b) +
                      " are not adjacent");
}

}  // namespace

ArcSelection pbs_witness_from_clique(const PbsInstance& p, const CliquePbsCert& cert,
                                     const std::vector<VertexId>& clique) {
  const ColoredGraph& cg = cert.colored;
  int k = cert.k;
  if (static_cast<int>(clique.size()) != k)
    throw InstanceError("clique must have exactly one vertex per class");
  std::vector<VertexId> by_class(k + 1, -1);
  for (VertexId v : clique) {
    int c = cg.class_of(v);
    if (by_class[c] != -1) throw InstanceError("two clique vertices share a class");
    by_class[c] = v;
  }
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j)
      if (!cg.has_edge(by_class[i], by_class[j]))
        throw InstanceError("vertices " + std::to_string(by_class[i]) + " and " +
                            std::to_string(by_class[j]) + " are not adjacent");

  std::vector<ArcId> arcs = gadget_active_arcs(cert.start);
  auto push = [&](const std::vector<ArcId>& more) {
    arcs.insert(arcs.end(), more.begin(), more.end());
  };
  for (int i = 1; i <= k; ++i) {
    VertexId vi = by_class[i];
    push(gadget_choice_arcs(cert.choose_vertex[i - 1], index_of_vertex(cg, i, vi)));
    push(gadget_active_arcs(cert.assign_vertex.at({i, vi})));
    const auto& labels = cert.assign_vertex_labels.at({i, vi});
    for (size_t ji = 0; ji < labels.size(); ++ji) {
      int j = labels[ji];
      int r = edge_index_between(cg, vi, by_class[j]);
      const auto& edge_labels = cert.choose_edge_labels.at({i, vi, j});
      int pos = -1;
      for (size_t q = 0; q < edge_labels.size(); ++q)
        if (edge_labels[q] == r) pos = static_cast<int>(q);
      push(gadget_choice_arcs(cert.choose_edge.at({i, vi, j}), pos));
      push(gadget_active_arcs(cert.assign_edge.at({i, vi, j, r})));
    }
  }
  for (const auto& [key, check] : cert.check_edge) {
    auto [i, j] = key;
    int r = edge_index_between(cg, by_class[i], by_class[j]);
    const CheckEdgeBlock* blk = nullptr;
    for (const auto& cand : cert.check_edge_blocks.at(key))
      if (cand.edge_index == r) blk = &cand;
    if (!blk) throw InstanceError("CheckEdge block missing for the clique edge");
    push(gadget_checksum_arcs(check, blk->left_positions, blk->right_positions));
  }
  (void)p;
  return ArcSelection(std::move(arcs));
}

std::vector<VertexId> clique_from_pbs_solution(const PbsInstance& p,
                                               const CliquePbsCert& cert,
                                               const ArcSelection& s) {
  PbsViolation viol;
  if (!check_properly_balanced(p, s, &viol))
    throw InstanceError("selection is not properly balanced: " + viol.to_string());
  if (selection_weight(p, s) >= 0)
    throw InstanceError("selection does not have negative weight");
  std::vector<VertexId> clique;
  for (int i = 1; i <= cert.k; ++i) {
    const GadgetHandle& cv = cert.choose_vertex[i - 1];
    int chosen = -1;
    for (size_t q = 0; q < cv.outputs.size(); ++q)
      if (s.contains(cv.outputs[q])) {
        if (chosen != -1)
          throw InstanceError("ChooseVertex gadget selected two outputs");
        chosen = static_cast<int>(q);
      }
    if (chosen == -1) throw InstanceError("ChooseVertex gadget selected no output");
    clique.push_back(cert.colored.class_vertices(i)[chosen]);
  }
  for (size_t a = 0; a < clique.size(); ++a)
    for (size_t c = a + 1; c < clique.size(); ++c)
      if (!cert.colored.has_edge(clique[a], clique[c]))
        throw InstanceError("recovered vertices are not a clique");
  return clique;
}

// ---- PBS -> MCPP ----

std::tuple<MixedGraph, long long, McppReductionCert> pbs_to_mcpp(
    const PbsInstance& p, bool expand_heavy, const PathDecomposition* input_dec) {
  // Form validation.
  int neg_arcs = 0;
  for (const auto& a : p.arcs()) {
    switch (p.pair_kind(a.id)) {
      case PairKind::Forbidden:
        throw InstanceError("input must not contain forbidden pairs");
      case PairKind::Double:
        if (a.weight != 0) throw InstanceError("double-pair arcs must have weight 0");
        break;
      case PairKind::None:
        if (a.weight == -1) ++neg_arcs;
        else if (a.weight != 0)
          throw InstanceError("arc " + std::to_string(a.id) + " must have weight 0 or -1");
        break;
    }
  }
  if (neg_arcs != 1)
    throw InstanceError("input must contain exactly one weight -1 arc, found " +
                        std::to_string(neg_arcs));

  int m1 = 0;
  for (const auto& a : p.arcs())
    if (p.pair_kind(a.id) == PairKind::None && a.weight == 0) ++m1;
  int m2 = static_cast<int>(p.double_pairs().size());
  long long M = m1 + 3;
  long long W = (3ll * m1 + 2ll * m2 + 5) * M + 3ll * m1 + 5;

  PathDecomposition dec =
      input_dec ? *input_dec : pathwidth_upper_bound(underlying_graph(p));

  McppReductionCert cert;
  cert.M = M;
  cert.W = W;
  cert.m1 = m1;
  cert.m2 = m2;
  cert.expanded = expand_heavy;

  // The mixed graph grows beyond p's vertices; collect elements first, then
  // build. Vertices: p's, then per-gadget hubs, then path internals.
  struct PendingEdge {
    VertexId u, v;
    long long w;
    bool is_edge;
  };
  int next_vertex = p.vertex_count();
  std::vector<PendingEdge> pending;
  auto new_vertex = [&]() { return next_vertex++; };
  auto emit_arc = [&](VertexId a, VertexId b, long long w) {
    pending.push_back({a, b, w, false});
    return static_cast<ElementId>(pending.size() - 1);
  };
  auto emit_edge = [&](VertexId a, VertexId b, long long w) {
    pending.push_back({a, b, w, true});
    return static_cast<ElementId>(pending.size() - 1);
  };
  auto heavy_arc = [&](VertexId from, VertexId to) {
    HeavyElement h;
    if (!expand_heavy) {
      h.elements.push_back(emit_arc(from, to, M));
    } else {
      VertexId prev = from;
      for (long long i = 1; i < M; ++i) {
        VertexId mid = new_vertex();
        h.elements.push_back(emit_arc(prev, mid, 1));
        prev = mid;
      }
      h.elements.push_back(emit_arc(prev, to, 1));
    }
    return h;
  };
  auto heavy_edge = [&](VertexId from, VertexId to) {
    HeavyElement h;
    if (!expand_heavy) {
      h.elements.push_back(emit_edge(from, to, M));
    } else {
      VertexId prev = from;
      for (long long i = 1; i < M; ++i) {
        VertexId mid = new_vertex();
        h.elements.push_back(emit_edge(prev, mid, 1));
        prev = mid;
      }
      h.elements.push_back(emit_edge(prev, to, 1));
    }
    return h;
  };

  struct SpliceLater {
    std::vector<VertexId> anchor;
    std::vector<std::vector<VertexId>> bags;
  };
  std::vector<SpliceLater> splices;

  auto chain_bags = [&](const HeavyElement& h, const std::vector<VertexId>& hubs,
                        std::vector<std::vector<VertexId>>& bags) {
    // bags over the path's internal vertices (none when compressed)
    if (!expand_heavy) return;
    std::vector<VertexId> internals;
    for (size_t i = 0; i + 1 < h.elements.size(); ++i)
      internals.push_back(pending[h.elements[i]].v);
    for (size_t i = 0; i < internals.size(); ++i) {
      std::vector<VertexId> bag = hubs;
      bag.push_back(internals[i]);
      if (i + 1 < internals.size()) bag.push_back(internals[i + 1]);
      bags.push_back(std::move(bag));
    }
  };

  for (const auto& a : p.arcs()) {
    if (p.pair_kind(a.id) == PairKind::Double) continue;
    McppGadget gd;
    gd.pbs_arc = a.id;
    gd.u = a.tail;
    gd.v = a.head;
    if (a.weight == 0) {
      gd.kind = McppGadget::ZeroArc;
      gd.z = new_vertex();
      gd.std_zu = emit_arc(gd.z, gd.u, 1);
      gd.std_zv = emit_arc(gd.z, gd.v, 1);
      gd.heavy_uz1 = heavy_arc(gd.u, gd.z);
      gd.heavy_uz2 = heavy_arc(gd.u, gd.z);
      gd.heavy_vz = heavy_arc(gd.v, gd.z);
      SpliceLater sp;
      sp.anchor = {gd.u, gd.v};
      sp.bags.push_back({gd.z});
      chain_bags(gd.heavy_uz1, {gd.z}, sp.bags);
      chain_bags(gd.heavy_uz2, {gd.z}, sp.bags);
      chain_bags(gd.heavy_vz, {gd.z}, sp.bags);
      splices.push_back(std::move(sp));
    } else {
      gd.kind = McppGadget::NegArc;
      gd.z = new_vertex();
      gd.w = new_vertex();
      gd.std_zu = emit_arc(gd.z, gd.u, 1);
      gd.std_zw = emit_arc(gd.z, gd.w, 1);
      gd.std_vw = emit_arc(gd.v, gd.w, 1);
      gd.heavy_uz1 = heavy_arc(gd.u, gd.z);
      gd.heavy_uz2 = heavy_arc(gd.u, gd.z);
      gd.heavy_wz = heavy_arc(gd.w, gd.z);
      gd.heavy_wv1 = heavy_arc(gd.w, gd.v);
      gd.heavy_wv2 = heavy_arc(gd.w, gd.v);
      SpliceLater sp;
      sp.anchor = {gd.u, gd.v};
      sp.bags.push_back({gd.z, gd.w});
      chain_bags(gd.heavy_uz1, {gd.z, gd.w}, sp.bags);
      chain_bags(gd.heavy_uz2, {gd.z, gd.w}, sp.bags);
      chain_bags(gd.heavy_wz, {gd.z, gd.w}, sp.bags);
      chain_bags(gd.heavy_wv1, {gd.z, gd.w}, sp.bags);
      chain_bags(gd.heavy_wv2, {gd.z, gd.w}, sp.bags);
      splices.push_back(std::move(sp));
    }
    cert.gadgets.push_back(std::move(gd));
  }
  for (const auto& [a1, a2] : p.double_pairs()) {
    McppGadget gd;
    gd.kind = McppGadget::DoubleArc;
    gd.pbs_arc = a1;
    gd.pbs_arc2 = a2;
    gd.u = p.arc(a1).tail;
    gd.v = p.arc(a1).head;
    gd.heavy_arc_uv = heavy_arc(gd.u, gd.v);
    gd.heavy_edge_uv = heavy_edge(gd.u, gd.v);
    if (expand_heavy) {
      SpliceLater sp;
      sp.anchor = {gd.u, gd.v};
      chain_bags(gd.heavy_arc_uv, {}, sp.bags);
      chain_bags(gd.heavy_edge_uv, {}, sp.bags);
      splices.push_back(std::move(sp));
    }
    cert.gadgets.push_back(std::move(gd));
  }

  MixedGraph g(next_vertex);
  for (const auto& e : pending) {
    if (e.is_edge) g.add_edge(e.u, e.v, e.w);
    else g.add_arc(e.u, e.v, e.w);
  }
  for (const auto& sp : splices) {
    if (sp.bags.empty()) continue;
    PathDecomposition ins;
    ins.bags = sp.bags;
    splice_decomposition(dec, sp.anchor, ins);
  }
  cert.decomposition = std::move(dec);
  return {std::move(g), W, std::move(cert)};
}

namespace {

size_t arc_pos(const MixedGraph& g, ElementId el) {
  for (size_t i = 0; i < g.arcs().size(); ++i)
    if (g.arcs()[i].id == el) return i;
  throw InstanceError("certificate references unknown arc element");
}

size_t edge_pos(const MixedGraph& g, ElementId el) {
  for (size_t i = 0; i < g.edges().size(); ++i)
    if (g.edges()[i].id == el) return i;
  throw InstanceError("certificate references unknown edge element");
}

void set_heavy_once(const MixedGraph& g, McppSolution& sol, const HeavyElement& h,
                    bool along_path) {
  for (size_t i = 0; i < h.elements.size(); ++i) {
    ElementId el = h.elements[i];
    bool is_edge = false;
    for (const auto& e : g.edges())
      if (e.id == el) is_edge = true;
    if (is_edge) {
      size_t pos = edge_pos(g, el);
      (along_path ? sol.edge_fwd[pos] : sol.edge_bwd[pos]) = 1;
    } else {
      sol.arc_count[arc_pos(g, el)] = 1;
    }
  }
}

}  // namespace

McppSolution mcpp_solution_from_pbs_solution(const McppReductionCert& cert,
                                             const MixedGraph& g,
                                             const std::optional<ArcSelection>& s) {
  McppSolution sol = McppSolution::zero(g);
  for (const auto& gd : cert.gadgets) {
    switch (gd.kind) {
      case McppGadget::ZeroArc: {
        bool active = s && s->contains(gd.pbs_arc);
        set_heavy_once(g, sol, gd.heavy_uz1, true);
        set_heavy_once(g, sol, gd.heavy_uz2, true);
        set_heavy_once(g, sol, gd.heavy_vz, true);
        sol.arc_count[arc_pos(g, gd.std_zu)] = active ? 1 : 2;
        sol.arc_count[arc_pos(g, gd.std_zv)] = active ? 2 : 1;
        break;
      }
      case McppGadget::NegArc: {
        bool active = s && s->contains(gd.pbs_arc);
        set_heavy_once(g, sol, gd.heavy_uz1, true);
        set_heavy_once(g, sol, gd.heavy_uz2, true);
        set_heavy_once(g, sol, gd.heavy_wz, true);
        set_heavy_once(g, sol, gd.heavy_wv1, true);
        set_heavy_once(g, sol, gd.heavy_wv2, true);
        sol.arc_count[arc_pos(g, gd.std_zu)] = active ? 1 : 2;
        sol.arc_count[arc_pos(g, gd.std_zw)] = active ? 2 : 1;
        sol.arc_count[arc_pos(g, gd.std_vw)] = active ? 1 : 2;
        break;
      }
      case McppGadget::DoubleArc: {
        int used = 0;
        if (s) used = (s->contains(gd.pbs_arc) ? 1 : 0) + (s->contains(gd.pbs_arc2) ? 1 : 0);
        if (used == 1) throw InstanceError("selection breaks a double pair");
        bool active = used == 2;
        set_heavy_once(g, sol, gd.heavy_arc_uv, true);
        // active: traverse the edge u->v (path orientation); passive: v->u
        set_heavy_once(g, sol, gd.heavy_edge_uv, active);
        break;
      }
    }
  }
  return sol;
}

ArcSelection pbs_solution_from_mcpp_solution(const McppReductionCert& cert,
                                             const MixedGraph& g, const McppSolution& sol) {
  McppCheck check = verify_mcpp_solution(g, sol);
  if (!check.ok) throw InstanceError("solution does not verify: " + check.why);
  auto heavy_once = [&](const HeavyElement& h) {
    for (ElementId el : h.elements) {
      bool is_edge = false;
      for (const auto& e : g.edges())
        if (e.id == el) is_edge = true;
      long long c = is_edge ? sol.edge_fwd[edge_pos(g, el)] + sol.edge_bwd[edge_pos(g, el)]
                            : sol.arc_count[arc_pos(g, el)];
      if (c != 1)
        throw InstanceError("heavy element traversed " + std::to_string(c) +
                            " times; solution is not minimal");
    }
  };
  std::vector<ArcId> chosen;
  for (const auto& gd : cert.gadgets) {
    switch (gd.kind) {
      case McppGadget::ZeroArc: {
        heavy_once(gd.heavy_uz1);
        heavy_once(gd.heavy_uz2);
        heavy_once(gd.heavy_vz);
        long long zu = sol.arc_count[arc_pos(g, gd.std_zu)];
        long long zv = sol.arc_count[arc_pos(g, gd.std_zv)];
        if (zu == 2 && zv == 1) {
        } else if (zu == 1 && zv == 2) {
          chosen.push_back(gd.pbs_arc);
        } else {
          throw InstanceError("zero-arc gadget is in neither canonical state");
        }
        break;
      }
      case McppGadget::NegArc: {
        heavy_once(gd.heavy_uz1);
        heavy_once(gd.heavy_uz2);
        heavy_once(gd.heavy_wz);
        heavy_once(gd.heavy_wv1);
        heavy_once(gd.heavy_wv2);
        long long zu = sol.arc_count[arc_pos(g, gd.std_zu)];
        long long zw = sol.arc_count[arc_pos(g, gd.std_zw)];
        long long vw = sol.arc_count[arc_pos(g, gd.std_vw)];
        if (zu == 2 && zw == 1 && vw == 2) {
        } else if (zu == 1 && zw == 2 && vw == 1) {
          chosen.push_back(gd.pbs_arc);
        } else {
          throw InstanceError("negative-arc gadget is in neither canonical state");
        }
        break;
      }
      case McppGadget::DoubleArc: {
        heavy_once(gd.heavy_arc_uv);
        heavy_once(gd.heavy_edge_uv);
        ElementId first = gd.heavy_edge_uv.elements[0];
        size_t pos = edge_pos(g, first);
        if (sol.edge_fwd[pos] == 1) {
          chosen.push_back(gd.pbs_arc);
          chosen.push_back(gd.pbs_arc2);
        } else if (sol.edge_bwd[pos] != 1) {
          throw InstanceError("double-arc gadget is in neither canonical state");
        }
        break;
      }
    }
  }
  return ArcSelection(std::move(chosen));
}

// ---- JSON ----

namespace {

json handle_to_json(const GadgetHandle& h) {
  json j;
  j["kind"] = static_cast<int>(h.kind);
  j["input"] = h.input;
  j["outputs"] = h.outputs;
  j["all_arcs"] = h.all_arcs;
  j["input_path"] = h.input_path;
  j["output_paths"] = h.output_paths;
  j["left_inputs"] = h.left_inputs;
  j["right_inputs"] = h.right_inputs;
  j["left_paths"] = h.left_paths;
  j["right_paths"] = h.right_paths;
  return j;
}

GadgetHandle handle_from_json(const json& j) {
  GadgetHandle h;
  h.kind = static_cast<GadgetKind>(j.at("kind").get<int>());
  h.input = j.at("input").get<ArcId>();
  h.outputs = j.at("outputs").get<std::vector<ArcId>>();
  h.all_arcs = j.at("all_arcs").get<std::vector<ArcId>>();
  h.input_path = j.at("input_path").get<std::array<ArcId, 3>>();
  h.output_paths = j.at("output_paths").get<std::vector<std::array<ArcId, 3>>>();
  h.left_inputs = j.at("left_inputs").get<std::vector<ArcId>>();
  h.right_inputs = j.at("right_inputs").get<std::vector<ArcId>>();
  h.left_paths = j.at("left_paths").get<std::vector<std::array<ArcId, 3>>>();
  h.right_paths = j.at("right_paths").get<std::vector<std::array<ArcId, 3>>>();
  return h;
}

json decomposition_to_json(const PathDecomposition& d) {
  return json(d.bags);
}

PathDecomposition decomposition_from_json(const json& j) {
  PathDecomposition d;
  d.bags = j.get<std::vector<std::vector<VertexId>>>();
  return d;
}

}  // namespace

std::string clique_cert_to_json(const CliquePbsCert& cert) {
  json j;
  j["type"] = "clique-to-pbs";
  j["k"] = cert.k;
  j["colored"] = serialize_colored_graph(cert.colored);
  j["a_star"] = cert.a_star;
  j["start"] = handle_to_json(cert.start);
  j["choose_vertex"] = json::array();
  for (const auto& h : cert.choose_vertex) j["choose_vertex"].push_back(handle_to_json(h));
  j["assign_vertex"] = json::array();
  for (const auto& [key, h] : cert.assign_vertex) {
    json e;
    e["i"] = key.first;
    e["v"] = key.second;
    e["handle"] = handle_to_json(h);
    e["labels"] = cert.assign_vertex_labels.at(key);
    j["assign_vertex"].push_back(e);
  }
  j["choose_edge"] = json::array();
  for (const auto& [key, h] : cert.choose_edge) {
    json e;
    e["i"] = std::get<0>(key);
    e["v"] = std::get<1>(key);
    e["j"] = std::get<2>(key);
    e["handle"] = handle_to_json(h);
    e["labels"] = cert.choose_edge_labels.at(key);
    j["choose_edge"].push_back(e);
  }
  j["assign_edge"] = json::array();
  for (const auto& [key, h] : cert.assign_edge) {
    json e;
    e["i"] = std::get<0>(key);
    e["v"] = std::get<1>(key);
    e["j"] = std::get<2>(key);
    e["r"] = std::get<3>(key);
    e["handle"] = handle_to_json(h);
    j["assign_edge"].push_back(e);
  }
  j["check_edge"] = json::array();
  for (const auto& [key, h] : cert.check_edge) {
    json e;
    e["i"] = key.first;
    e["j"] = key.second;
    e["handle"] = handle_to_json(h);
    e["blocks"] = json::array();
    for (const auto& blk : cert.check_edge_blocks.at(key)) {
      json bj;
      bj["edge_index"] = blk.edge_index;
      bj["vertex_left"] = blk.vertex_left;
      bj["vertex_right"] = blk.vertex_right;
      bj["left_positions"] = blk.left_positions;
      bj["right_positions"] = blk.right_positions;
      e["blocks"].push_back(bj);
    }
    j["check_edge"].push_back(e);
  }
  j["decomposition"] = decomposition_to_json(cert.decomposition);
  return j.dump(2);
}

CliquePbsCert clique_cert_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.value("type", "") != "clique-to-pbs")
    throw InstanceError("certificate is not a clique-to-pbs certificate");
  CliquePbsCert cert{.k = j.at("k").get<int>(),
                     .colored = parse_colored_graph(j.at("colored").get<std::string>())};
  cert.a_star = j.at("a_star").get<ArcId>();
  cert.start = handle_from_json(j.at("start"));
  for (const auto& e : j.at("choose_vertex")) cert.choose_vertex.push_back(handle_from_json(e));
  for (const auto& e : j.at("assign_vertex")) {
    std::pair<int, VertexId> key{e.at("i").get<int>(), e.at("v").get<VertexId>()};
    cert.assign_vertex[key] = handle_from_json(e.at("handle"));
    cert.assign_vertex_labels[key] = e.at("labels").get<std::vector<int>>();
  }
  for (const auto& e : j.at("choose_edge")) {
    std::tuple<int, VertexId, int> key{e.at("i").get<int>(), e.at("v").get<VertexId>(),
                                       e.at("j").get<int>()};
    cert.choose_edge[key] = handle_from_json(e.at("handle"));
    cert.choose_edge_labels[key] = e.at("labels").get<std::vector<int>>();
  }
  for (const auto& e : j.at("assign_edge")) {
    std::tuple<int, VertexId, int, int> key{e.at("i").get<int>(), e.at("v").get<VertexId>(),
                                            e.at("j").get<int>(), e.at("r").get<int>()};
    cert.assign_edge[key] = handle_from_json(e.at("handle"));
  }
  for (const auto& e : j.at("check_edge")) {
    std::pair<int, int> key{e.at("i").get<int>(), e.at("j").get<int>()};
    cert.check_edge[key] = handle_from_json(e.at("handle"));
    std::vector<CheckEdgeBlock> blocks;
    for (const auto& bj : e.at("blocks")) {
      CheckEdgeBlock blk;
      blk.edge_index = bj.at("edge_index").get<int>();
      blk.vertex_left = bj.at("vertex_left").get<VertexId>();
      blk.vertex_right = bj.at("vertex_right").get<VertexId>();
      blk.left_positions = bj.at("left_positions").get<std::vector<int>>();
      blk.right_positions = bj.at("right_positions").get<std::vector<int>>();
      blocks.push_back(std::move(blk));
    }
    cert.check_edge_blocks[key] = std::move(blocks);
  }
  cert.decomposition = decomposition_from_json(j.at("decomposition"));
  return cert;
}

namespace {

json heavy_to_json(const HeavyElement& h) {
  return json(h.elements);
}

HeavyElement heavy_from_json(const json& j) {
  HeavyElement h;
  h.elements = j.get<std::vector<ElementId>>();
  return h;
}

}  // namespace

std::string mcpp_cert_to_json(const McppReductionCert& cert) {
  json j;
  j["type"] = "pbs-to-mcpp";
  j["M"] = cert.M;
  j["W"] = cert.W;
  j["m1"] = cert.m1;
  j["m2"] = cert.m2;
  j["expanded"] = cert.expanded;
  j["gadgets"] = json::array();
  for (const auto& gd : cert.gadgets) {
    json e;
    e["kind"] = static_cast<int>(gd.kind);
    e["pbs_arc"] = gd.pbs_arc;
    e["pbs_arc2"] = gd.pbs_arc2;
    e["u"] = gd.u;
    e["v"] = gd.v;
    e["z"] = gd.z;
    e["w"] = gd.w;
    e["std_zu"] = gd.std_zu;
    e["std_zv"] = gd.std_zv;
    e["std_zw"] = gd.std_zw;
    e["std_vw"] = gd.std_vw;
    e["heavy_uz1"] = heavy_to_json(gd.heavy_uz1);
    e["heavy_uz2"] = heavy_to_json(gd.heavy_uz2);
    e["heavy_vz"] = heavy_to_json(gd.heavy_vz);
    e["heavy_wz"] = heavy_to_json(gd.heavy_wz);
    e["heavy_wv1"] = heavy_to_json(gd.heavy_wv1);
    e["heavy_wv2"] = heavy_to_json(gd.heavy_wv2);
    e["heavy_arc_uv"] = heavy_to_json(gd.heavy_arc_uv);
    e["heavy_edge_uv"] = heavy_to_json(gd.heavy_edge_uv);
    j["gadgets"].push_back(e);
  }
  j["decomposition"] = decomposition_to_json(cert.decomposition);
  return j.dump(2);
}

McppReductionCert mcpp_cert_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.value("type", "") != "pbs-to-mcpp")
    throw InstanceError("certificate is not a pbs-to-mcpp certificate");
  McppReductionCert cert;
  cert.M = j.at("M").get<long long>();
  cert.W = j.at("W").get<long long>();
  cert.m1 = j.at("m1").get<int>();
  cert.m2 = j.at("m2").get<int>();
  cert.expanded = j.at("expanded").get<bool>();
  for (const auto& e : j.at("gadgets")) {
    McppGadget gd;
    gd.kind = static_cast<McppGadget::Kind>(e.at("kind").get<int>());
    gd.pbs_arc = e.at("pbs_arc").get<ArcId>();
    gd.pbs_arc2 = e.at("pbs_arc2").get<ArcId>();
    gd.u = e.at("u").get<VertexId>();
    gd.v = e.at("v").get<VertexId>();
    gd.z = e.at("z").get<VertexId>();
    gd.w = e.at("w").get<VertexId>();
    gd.std_zu = e.at("std_zu").get<ElementId>();
    gd.std_zv = e.at("std_zv").get<ElementId>();
    gd.std_zw = e.at("std_zw").get<ElementId>();
    gd.std_vw = e.at("std_vw").get<ElementId>();
    gd.heavy_uz1 = heavy_from_json(e.at("heavy_uz1"));
    gd.heavy_uz2 = heavy_from_json(e.at("heavy_uz2"));
    gd.heavy_vz = heavy_from_json(e.at("heavy_vz"));
    gd.heavy_wz = heavy_from_json(e.at("heavy_wz"));
    gd.heavy_wv1 = heavy_from_json(e.at("heavy_wv1"));
    gd.heavy_wv2 = heavy_from_json(e.at("heavy_wv2"));
    gd.heavy_arc_uv = heavy_from_json(e.at("heavy_arc_uv"));
    gd.heavy_edge_uv = heavy_from_json(e.at("heavy_edge_uv"));
    cert.gadgets.push_back(std::move(gd));
  }
  cert.decomposition = decomposition_from_json(j.at("decomposition"));
  return cert;
}

std::string selection_to_json(const ArcSelection& s) {
  json j;
  j["arcs"] = s.ids;
  return j.dump();
}

ArcSelection selection_from_json(const std::string& text) {
  json j = json::parse(text);
  return ArcSelection(j.at("arcs").get<std::vector<ArcId>>());
}

std::string solution_to_json(const McppSolution& sol) {
  json j;
  j["arc_counts"] = sol.arc_count;
  j["edge_fwd"] = sol.edge_fwd;
  j["edge_bwd"] = sol.edge_bwd;
  return j.dump();
}

McppSolution solution_from_json(const std::string& text, const MixedGraph& g) {
  json j = json::parse(text);
  McppSolution sol;
  sol.arc_count = j.at("arc_counts").get<std::vector<long long>>();
  sol.edge_fwd = j.at("edge_fwd").get<std::vector<long long>>();
  sol.edge_bwd = j.at("edge_bwd").get<std::vector<long long>>();
  if (sol.arc_count.size() != g.arcs().size() || sol.edge_fwd.size() != g.edges().size() ||
      sol.edge_bwd.size() != g.edges().size())
    throw InstanceError("solution counts do not match the instance");
  return sol;
}

}  // namespace postman
