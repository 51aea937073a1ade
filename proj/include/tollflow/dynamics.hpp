#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tollflow/instance.hpp"
#include "tollflow/pwl.hpp"

namespace tollflow {

// Inflow, outflow and queue of one Vickrey bottleneck edge. queue is the
// waiting time q_e (time units), mass the queued volume z_e = capacity * q_e.
struct EdgeFlowState {
  EdgeIndex edge = 0;
  Rational transit;
  Rational capacity;
  StepFunction inflow;
  StepFunction outflow;
  PwlFunction queue;
  PwlFunction mass;
  Rational initial_queue;
};

// Propagates `inflow` through the bottleneck: outflow at t + transit is the
// capacity while the queue is positive, min(inflow, capacity) while empty.
// Outflow is 0 on [0, transit).
EdgeFlowState propagate_edge(const StepFunction& inflow, const Edge& edge, const Rational& initial_queue,
                             EdgeIndex index = 0);

// T_e(t) = t + q_e(t) + transit.
Rational exit_time(const EdgeFlowState& state, const Rational& t);

// Per-edge inflow rates over a validated instance, with outflows and queues
// obtained by propagation. A deficit horizon T marks a deficit flow: interior
// vertices may emit flow before T.
class FlowOverTime {
 public:
  FlowOverTime(Instance instance, std::vector<StepFunction> inflows, std::vector<Rational> initial_queues = {},
               std::optional<Rational> deficit_horizon = std::nullopt);

  const Instance& instance() const { return instance_; }
  const std::vector<EdgeFlowState>& edge_states() const { return states_; }
  const EdgeFlowState& edge_state(EdgeIndex e) const { return states_.at(e); }
  const std::optional<Rational>& deficit_horizon() const { return deficit_horizon_; }

  // Largest breakpoint over all inflow rates and queue functions; beyond it
  // every inflow is constant and every queue linear.
  Rational last_event() const;

 private:
  Instance instance_;
  std::vector<EdgeFlowState> states_;
  std::optional<Rational> deficit_horizon_;
};

struct ConservationViolation {
  VertexIndex vertex = 0;
  Rational start;
  std::optional<Rational> end;  // nullopt: unbounded piece
  Rational net_outflow;
  std::string requirement;
};

struct ConservationReport {
  bool ok = true;
  std::optional<Rational> deficit_horizon;
  std::vector<ConservationViolation> violations;
};

// Mode follows flow.deficit_horizon(); the overload forces a mode
// (nullopt = strict).
ConservationReport check_conservation(const FlowOverTime& flow);
ConservationReport check_conservation(const FlowOverTime& flow, const std::optional<Rational>& deficit_horizon);

// Evaluates minimum cost-to-sink labels c_v(t). Results are memoized per
// evaluator, keyed on (vertex, exact time); create one evaluator per query.
// Throws CycleGuard when the instance has a zero-transit cycle.
class CostEvaluator {
 public:
  explicit CostEvaluator(const FlowOverTime& flow);

  Rational cost(VertexIndex v, const Rational& t);
  // transit + q_e(t) + toll + c_w(T_e(t)) for e = vw.
  Rational cost_via(EdgeIndex e, const Rational& t);
  std::vector<EdgeIndex> active_edges(const Rational& t);

 private:
  std::optional<Rational> best_simple_path(VertexIndex v, const Rational& t, std::uint64_t visited);

  const FlowOverTime& flow_;
  bool acyclic_;
  std::map<std::pair<VertexIndex, Rational>, Rational> memo_;
};

Rational cost_to_sink(const FlowOverTime& flow, VertexIndex v, const Rational& t);
std::vector<EdgeIndex> active_edges(const FlowOverTime& flow, const Rational& t);

struct EquilibriumViolation {
  EdgeIndex edge = 0;
  Rational time;
  Rational path_cost;
  Rational min_cost;
  bool tail = false;  // found by the check on [last_event, inf)
};

struct EquilibriumReport {
  bool ok = true;
  std::vector<EquilibriumViolation> violations;
  std::vector<Rational> checked_times;
  // Set when every event lies inside the horizon and the activity equations
  // were additionally verified on the whole final ray.
  bool tail_checked = false;
  std::optional<Rational> tail_start;
};

// Verifies that every edge with positive inflow is active on the event grid
// (breakpoints, their exit-time images, midpoints) within [0, horizon], plus
// `extra_times`.
EquilibriumReport check_equilibrium(const FlowOverTime& flow, const Rational& horizon,
                                    const std::vector<Rational>& extra_times = {});

}  // namespace tollflow
