#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tollflow/instance.hpp"

namespace tollflow {

// Source thin flow without resetting: static s-t flow y of value u with
// labels lambda (lambda_s = 1).
struct SourceThinFlow {
  std::vector<Rational> y;       // per edge
  std::vector<Rational> lambda;  // per vertex
  std::vector<bool> flow_carrying;  // per vertex: incident to an edge with y > 0
};

struct SinkThinFlow {
  std::vector<Rational> x;   // per edge
  std::vector<Rational> mu;  // per vertex
};

enum class EdgeClass { Greater, Equal, Less };

struct EdgePartition {
  std::vector<EdgeIndex> gt;  // lambda_head > lambda_tail
  std::vector<EdgeIndex> eq;
  std::vector<EdgeIndex> lt;
  std::vector<EdgeClass> of_edge;
};

struct Violation {
  std::string condition;  // e.g. "s-TF2", "flow-value"
  std::string subject;    // vertex or edge id
  std::string detail;
};

struct VerificationReport {
  bool ok = true;
  std::vector<Violation> violations;
  void add(std::string condition, std::string subject, std::string detail);
};

struct ThinFlowOptions {
  // Largest edge count the enumeration solver accepts.
  std::size_t max_edges = 14;
};

// Default options, with max_edges taken from TOLLFLOW_SIZE_LIMIT when set.
ThinFlowOptions thin_flow_options_from_env();

std::vector<bool> flow_carrying_vertices(const Instance& inst, const std::vector<Rational>& y);

SourceThinFlow solve_source_thin_flow(const Instance& inst, const ThinFlowOptions& options = thin_flow_options_from_env());

VerificationReport verify_source_thin_flow(const Instance& inst, const std::vector<Rational>& y,
                                           const std::vector<Rational>& lambda);

SinkThinFlow source_to_sink(const Instance& inst, const SourceThinFlow& thin_flow);

// Checks t-TF1..3 and that x_e (mu_s + 1) / (mu_v + 1), e = vw, is an s-t
// flow of value u.
VerificationReport verify_sink_thin_flow(const Instance& inst, const std::vector<Rational>& x,
                                         const std::vector<Rational>& mu);

EdgePartition partition_edges(const Instance& inst, const std::vector<Rational>& lambda);

// Net outflow of `flow` at every vertex.
std::vector<Rational> net_outflow(const Instance& inst, const std::vector<Rational>& flow);

}  // namespace tollflow
