#include "postman/graph.hpp"

#include <algorithm>
#include <queue>

namespace postman {

MixedGraph::MixedGraph(int vertex_count) : vertex_count_(vertex_count) {
  if (vertex_count < 0) throw InstanceError("negative vertex count");
}

void MixedGraph::check_endpoint(VertexId v) const {
  if (v < 0 || v >= vertex_count_)
    throw InstanceError("endpoint " + std::to_string(v) + " out of range (v " +
                        std::to_string(vertex_count_) + ")");
}

ElementId MixedGraph::add_edge(VertexId u, VertexId v, long long weight) {
  check_endpoint(u);
  check_endpoint(v);
  if (u == v) throw InstanceError("self-loop at vertex " + std::to_string(u));
  if (weight < 1) throw InstanceError("non-positive edge weight");
  ElementId id = element_count();
  edges_.push_back({id, u, v, weight});
  return id;
}

ElementId MixedGraph::add_arc(VertexId tail, VertexId head, long long weight) {
  check_endpoint(tail);
  check_endpoint(head);
  if (tail == head) throw InstanceError("self-loop at vertex " + std::to_string(tail));
  if (weight < 1) throw InstanceError("non-positive arc weight");
  ElementId id = element_count();
  arcs_.push_back({id, tail, head, weight});
  return id;
}

long long MixedGraph::total_weight() const {
  long long w = 0;
  for (const auto& e : edges_) w += e.weight;
  for (const auto& a : arcs_) w += a.weight;
  return w;
}

bool MixedGraph::operator==(const MixedGraph& o) const {
  if (vertex_count_ != o.vertex_count_) return false;
  if (edges_.size() != o.edges_.size() || arcs_.size() != o.arcs_.size()) return false;
  for (size_t i = 0; i < edges_.size(); ++i) {
    const Edge &a = edges_[i], &b = o.edges_[i];
    if (a.id != b.id || a.u != b.u || a.v != b.v || a.weight != b.weight) return false;
  }
  for (size_t i = 0; i < arcs_.size(); ++i) {
    const Arc &a = arcs_[i], &b = o.arcs_[i];
    if (a.id != b.id || a.tail != b.tail || a.head != b.head || a.weight != b.weight)
      return false;
  }
  return true;
}

PbsInstance::PbsInstance(int vertex_count) : vertex_count_(vertex_count) {
  if (vertex_count < 0) throw InstanceError("negative vertex count");
}

ArcId PbsInstance::add_arc(VertexId tail, VertexId head, long long weight) {
  if (tail < 0 || tail >= vertex_count_ || head < 0 || head >= vertex_count_)
    throw InstanceError("arc endpoint out of range");
  if (tail == head) throw InstanceError("self-loop at vertex " + std::to_string(tail));
  ArcId id = arc_count();
  arcs_.push_back({id, tail, head, weight});
  pair_kind_.push_back(PairKind::None);
  pair_partner_.push_back(-1);
  return id;
}

void PbsInstance::check_arc_id(ArcId a) const {
  if (a < 0 || a >= arc_count())
    throw InstanceError("pair references unknown arc id " + std::to_string(a));
}

void PbsInstance::check_unpaired(ArcId a) const {
  if (pair_kind_[a] != PairKind::None)
    throw InstanceError("arc " + std::to_string(a) + " already belongs to a pair");
}

void PbsInstance::add_double_pair(ArcId a, ArcId b) {
  check_arc_id(a);
  check_arc_id(b);
  if (a == b) throw InstanceError("double pair of an arc with itself");
  check_unpaired(a);
  check_unpaired(b);
  if (arcs_[a].tail != arcs_[b].tail || arcs_[a].head != arcs_[b].head)
    throw InstanceError("double pair (" + std::to_string(a) + "," + std::to_string(b) +
                        ") endpoints differ");
  double_pairs_.emplace_back(a, b);
  pair_kind_[a] = pair_kind_[b] = PairKind::Double;
  pair_partner_[a] = b;
  pair_partner_[b] = a;
}

void PbsInstance::add_forbidden_pair(ArcId a, ArcId b) {
  check_arc_id(a);
  check_arc_id(b);
  if (a == b) throw InstanceError("forbidden pair of an arc with itself");
  check_unpaired(a);
  check_unpaired(b);
  if (arcs_[a].tail != arcs_[b].head || arcs_[a].head != arcs_[b].tail)
    throw InstanceError("forbidden pair (" + std::to_string(a) + "," + std::to_string(b) +
                        ") arcs are not mutually reverse");
  forbidden_pairs_.emplace_back(a, b);
  pair_kind_[a] = pair_kind_[b] = PairKind::Forbidden;
  pair_partner_[a] = b;
  pair_partner_[b] = a;
}

bool PbsInstance::operator==(const PbsInstance& o) const {
  if (vertex_count_ != o.vertex_count_) return false;
  if (arcs_.size() != o.arcs_.size()) return false;
  for (size_t i = 0; i < arcs_.size(); ++i) {
    const PbsArc &a = arcs_[i], &b = o.arcs_[i];
    if (a.id != b.id || a.tail != b.tail || a.head != b.head || a.weight != b.weight)
      return false;
  }
  return double_pairs_ == o.double_pairs_ && forbidden_pairs_ == o.forbidden_pairs_;
}

ArcSelection::ArcSelection(std::vector<ArcId> raw) : ids(std::move(raw)) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

bool ArcSelection::contains(ArcId a) const {
  return std::binary_search(ids.begin(), ids.end(), a);
}

ColoredGraph::ColoredGraph(int k, int vertex_count)
    : k_(k), vertex_count_(vertex_count), class_of_(vertex_count, 0), classes_(k + 1) {
  if (k < 1) throw InstanceError("k must be at least 1");
  if (vertex_count < 0) throw InstanceError("negative vertex count");
}

const std::vector<VertexId>& ColoredGraph::class_vertices(int c) const {
  if (c < 1 || c > k_) throw InstanceError("class out of range");
  return classes_[c];
}

void ColoredGraph::assign_class(VertexId v, int c) {
  if (v < 0 || v >= vertex_count_) throw InstanceError("vertex out of range");
  if (c < 1 || c > k_) throw InstanceError("class out of range");
  if (class_of_[v] != 0)
    throw InstanceError("vertex " + std::to_string(v) + " assigned to two classes");
  class_of_[v] = c;
  classes_[c].push_back(v);
}

int ColoredGraph::add_edge(VertexId u, VertexId v) {
  if (u < 0 || u >= vertex_count_ || v < 0 || v >= vertex_count_)
    throw InstanceError("edge endpoint out of range");
  if (class_of_[u] == 0 || class_of_[v] == 0)
    throw InstanceError("edge endpoint has no class");
  if (class_of_[u] == class_of_[v])
    throw InstanceError("edge inside class " + std::to_string(class_of_[u]));
  if (has_edge(u, v)) throw InstanceError("duplicate edge");
  int index = static_cast<int>(edges_.size()) + 1;
  edges_.push_back({index, u, v});
  return index;
}

bool ColoredGraph::has_edge(VertexId u, VertexId v) const {
  for (const auto& e : edges_)
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return true;
  return false;
}

std::vector<ColoredEdge> ColoredGraph::edges_from_into(VertexId v, int c) const {
  std::vector<ColoredEdge> out;
  for (const auto& e : edges_) {
    if (e.u == v && class_of_[e.v] == c) out.push_back(e);
    else if (e.v == v && class_of_[e.u] == c) out.push_back(e);
  }
  return out;
}

void ColoredGraph::check_complete() const {
  for (VertexId v = 0; v < vertex_count_; ++v)
    if (class_of_[v] == 0)
      throw InstanceError("vertex " + std::to_string(v) + " has no class");
}

bool ColoredGraph::operator==(const ColoredGraph& o) const {
  if (k_ != o.k_ || vertex_count_ != o.vertex_count_ || class_of_ != o.class_of_) return false;
  if (edges_.size() != o.edges_.size()) return false;
  for (size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].index != o.edges_[i].index || edges_[i].u != o.edges_[i].u ||
        edges_[i].v != o.edges_[i].v)
      return false;
  }
  return true;
}

namespace {

std::vector<char> reach(const std::vector<std::vector<int>>& adj, int s) {
  std::vector<char> seen(adj.size(), 0);
  std::queue<int> q;
  seen[s] = 1;
  q.push(s);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        q.push(w);
      }
  }
  return seen;
}

}  // namespace

std::optional<std::pair<VertexId, VertexId>> validate_mcpp_instance(const MixedGraph& g) {
  int n = g.vertex_count();
  if (n <= 1) return std::nullopt;
  std::vector<std::vector<int>> fwd(n), bwd(n);
  for (const auto& a : g.arcs()) {
    fwd[a.tail].push_back(a.head);
    bwd[a.head].push_back(a.tail);
  }
  for (const auto& e : g.edges()) {
    fwd[e.u].push_back(e.v);
    fwd[e.v].push_back(e.u);
    bwd[e.u].push_back(e.v);
    bwd[e.v].push_back(e.u);
  }
  auto from0 = reach(fwd, 0);
  for (int v = 0; v < n; ++v)
    if (!from0[v]) return std::make_pair(0, v);
  auto to0 = reach(bwd, 0);
  for (int v = 0; v < n; ++v)
    if (!to0[v]) return std::make_pair(v, 0);
  return std::nullopt;
}

void SimpleGraph::add_edge(int u, int v) {
  if (u == v) return;
  if (has_edge(u, v)) return;
  adj[u].push_back(v);
  adj[v].push_back(u);
}

bool SimpleGraph::has_edge(int u, int v) const {
  return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
}

std::vector<std::vector<int>> SimpleGraph::components() const {
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> comps;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp;
    std::queue<int> q;
    seen[s] = 1;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      comp.push_back(v);
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          q.push(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

SimpleGraph underlying_graph(const MixedGraph& g) {
  SimpleGraph s(g.vertex_count());
  for (const auto& e : g.edges()) s.add_edge(e.u, e.v);
  for (const auto& a : g.arcs()) s.add_edge(a.tail, a.head);
  return s;
}

SimpleGraph underlying_graph(const PbsInstance& p) {
  SimpleGraph s(p.vertex_count());
  for (const auto& a : p.arcs()) s.add_edge(a.tail, a.head);
  return s;
}

}  // namespace postman
