#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tollflow/rational.hpp"

namespace tollflow {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

struct Edge {
  std::string id;
  VertexIndex tail = 0;
  VertexIndex head = 0;
  Rational transit;   // free-flow transit time, >= 0
  Rational capacity;  // outflow capacity, > 0
  Rational toll;      // fixed toll, >= 0
};

// Unvalidated description of an instance, vertices referenced by name.
struct InstanceSpec {
  struct EdgeSpec {
    std::string id;
    std::string tail;
    std::string head;
    Rational transit;
    Rational capacity;
    Rational toll;
  };
  std::vector<std::string> vertices;
  std::string source;
  std::string sink;
  Rational inflow;
  std::vector<EdgeSpec> edges;
};

// A validated tolled flow-over-time instance. Only validate_instance builds
// one, so every Instance satisfies the reachability and sign invariants.
class Instance {
 public:
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<std::string>& vertex_names() const { return vertices_; }
  const std::string& vertex_name(VertexIndex v) const { return vertices_.at(v); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }

  VertexIndex source() const { return source_; }
  VertexIndex sink() const { return sink_; }
  const Rational& inflow() const { return inflow_; }

  const std::vector<EdgeIndex>& out_edges(VertexIndex v) const { return out_.at(v); }
  const std::vector<EdgeIndex>& in_edges(VertexIndex v) const { return in_.at(v); }

  std::optional<VertexIndex> find_vertex(std::string_view name) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;
  // Throws UnknownVertex / InvalidArgument when absent.
  VertexIndex vertex(std::string_view name) const;
  EdgeIndex edge_index(std::string_view id) const;

  // True when some directed cycle uses only zero-transit edges.
  bool has_zero_transit_cycle() const;
  bool is_acyclic() const;

  InstanceSpec to_spec() const;

  friend bool operator==(const Instance& a, const Instance& b);

 private:
  friend Instance validate_instance(const InstanceSpec& raw);

  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  VertexIndex source_ = 0;
  VertexIndex sink_ = 0;
  Rational inflow_;
  std::vector<std::vector<EdgeIndex>> out_;
  std::vector<std::vector<EdgeIndex>> in_;
};

bool operator==(const Edge& a, const Edge& b);

Instance validate_instance(const InstanceSpec& raw);

Rational tau_max(const Instance& inst);

}  // namespace tollflow
