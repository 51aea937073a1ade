#include "tollflow/instance.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "tollflow/error.hpp"

namespace tollflow {

namespace {

std::vector<bool> search(std::size_t n, VertexIndex start,
                         const std::vector<std::vector<VertexIndex>>& adjacency) {
  std::vector<bool> seen(n, false);
  std::deque<VertexIndex> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const VertexIndex v = queue.front();
    queue.pop_front();
    for (VertexIndex w : adjacency[v]) {
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

// Kahn's algorithm on the sub-graph selected by `use`.
bool has_cycle(const Instance& inst, bool zero_transit_only) {
  const std::size_t n = inst.vertex_count();
  std::vector<std::size_t> indegree(n, 0);
  auto used = [&](const Edge& e) { return !zero_transit_only || e.transit.is_zero(); };
  for (const Edge& e : inst.edges()) {
    if (used(e)) ++indegree[e.head];
  }
  std::deque<VertexIndex> ready;
  for (VertexIndex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const VertexIndex v = ready.front();
    ready.pop_front();
    ++removed;
    for (EdgeIndex e : inst.out_edges(v)) {
      const Edge& edge = inst.edge(e);
      if (used(edge) && --indegree[edge.head] == 0) ready.push_back(edge.head);
    }
  }
  return removed != n;
}

}  // namespace

std::optional<VertexIndex> Instance::find_vertex(std::string_view name) const {
  const auto it = std::find(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<VertexIndex>(it - vertices_.begin());
}

std::optional<EdgeIndex> Instance::find_edge(std::string_view id) const {
  for (EdgeIndex e = 0; e < edges_.size(); ++e) {
    if (edges_[e].id == id) return e;
  }
  return std::nullopt;
}

VertexIndex Instance::vertex(std::string_view name) const {
  if (auto v = find_vertex(name)) return *v;
  throw Error(ErrorKind::UnknownVertex, "unknown vertex '" + std::string(name) + "'", std::string(name));
}

EdgeIndex Instance::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw Error(ErrorKind::InvalidArgument, "unknown edge '" + std::string(id) + "'", std::string(id));
}

bool Instance::has_zero_transit_cycle() const { return has_cycle(*this, true); }
bool Instance::is_acyclic() const { return !has_cycle(*this, false); }

InstanceSpec Instance::to_spec() const {
  InstanceSpec spec;
  spec.vertices = vertices_;
  spec.source = vertices_[source_];
  spec.sink = vertices_[sink_];
  spec.inflow = inflow_;
  for (const Edge& e : edges_) {
    spec.edges.push_back({e.id, vertices_[e.tail], vertices_[e.head], e.transit, e.capacity, e.toll});
  }
  return spec;
}

bool operator==(const Edge& a, const Edge& b) {
  return a.id == b.id && a.tail == b.tail && a.head == b.head && a.transit == b.transit &&
         a.capacity == b.capacity && a.toll == b.toll;
}

bool operator==(const Instance& a, const Instance& b) {
  return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.source_ == b.source_ &&
         a.sink_ == b.sink_ && a.inflow_ == b.inflow_;
}

Instance validate_instance(const InstanceSpec& raw) {
  Instance inst;
  std::map<std::string, VertexIndex, std::less<>> index;
  for (const std::string& name : raw.vertices) {
    if (!index.emplace(name, inst.vertices_.size()).second) {
      throw Error(ErrorKind::DuplicateId, "duplicate vertex '" + name + "'", name);
    }
    inst.vertices_.push_back(name);
  }
  auto lookup = [&](const std::string& name, ErrorKind kind, const std::string& what) {
    const auto it = index.find(name);
    if (it == index.end()) throw Error(kind, what + " '" + name + "' is not a vertex", name);
    return it->second;
  };
  inst.source_ = lookup(raw.source, ErrorKind::BadSourceSink, "source");
  inst.sink_ = lookup(raw.sink, ErrorKind::BadSourceSink, "sink");
  if (inst.source_ == inst.sink_) {
    throw Error(ErrorKind::BadSourceSink, "source and sink coincide", raw.source);
  }
  if (raw.inflow.sign() <= 0) throw Error(ErrorKind::NonpositiveInflow, "inflow must be positive");
  inst.inflow_ = raw.inflow;

  std::set<std::string, std::less<>> edge_ids;
  for (const auto& e : raw.edges) {
    if (!edge_ids.insert(e.id).second) throw Error(ErrorKind::DuplicateId, "duplicate edge '" + e.id + "'", e.id);
    const VertexIndex tail = lookup(e.tail, ErrorKind::UnknownVertex, "tail of " + e.id);
    const VertexIndex head = lookup(e.head, ErrorKind::UnknownVertex, "head of " + e.id);
    if (tail == head) throw Error(ErrorKind::SelfLoop, "edge '" + e.id + "' is a self-loop", e.id);
    if (e.capacity.sign() <= 0) {
      throw Error(ErrorKind::NonpositiveCapacity, "edge '" + e.id + "' has capacity " + e.capacity.str(), e.id);
    }
    if (e.transit.sign() < 0 || e.toll.sign() < 0) {
      throw Error(ErrorKind::NegativeTransitOrToll, "edge '" + e.id + "' has negative transit or toll", e.id);
    }
    inst.edges_.push_back({e.id, tail, head, e.transit, e.capacity, e.toll});
  }

  const std::size_t n = inst.vertices_.size();
  inst.out_.assign(n, {});
  inst.in_.assign(n, {});
  std::vector<std::vector<VertexIndex>> forward(n), backward(n);
  for (EdgeIndex i = 0; i < inst.edges_.size(); ++i) {
    const Edge& e = inst.edges_[i];
    inst.out_[e.tail].push_back(i);
    inst.in_[e.head].push_back(i);
    forward[e.tail].push_back(e.head);
    backward[e.head].push_back(e.tail);
  }
  const auto from_source = search(n, inst.source_, forward);
  const auto to_sink = search(n, inst.sink_, backward);
  for (VertexIndex v = 0; v < n; ++v) {
    if (!from_source[v]) {
      throw Error(ErrorKind::UnreachableVertex, "vertex '" + inst.vertices_[v] + "' is not reachable from the source",
                  inst.vertices_[v]);
    }
    if (!to_sink[v]) {
      throw Error(ErrorKind::UnreachableVertex, "sink is not reachable from vertex '" + inst.vertices_[v] + "'",
                  inst.vertices_[v]);
    }
  }
  return inst;
}

Rational tau_max(const Instance& inst) {
  Rational best(0);
  for (const Edge& e : inst.edges()) best = max(best, e.transit);
  return best;
}

}  // namespace tollflow
