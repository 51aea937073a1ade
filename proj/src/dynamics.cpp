#include "tollflow/dynamics.hpp"

#include <algorithm>
#include <set>

#include "tollflow/error.hpp"

namespace tollflow {

namespace {

struct Segment {
  Rational start;
  Rational mass;
  Rational slope;
  Rational exit_rate;  // outflow at start + transit
};

void enumerate_paths(const Instance& inst, VertexIndex v, std::uint64_t visited, std::vector<EdgeIndex>& current,
                     std::vector<std::vector<EdgeIndex>>& out) {
  if (v == inst.sink()) {
    out.push_back(current);
    return;
  }
  visited |= std::uint64_t{1} << v;
  for (EdgeIndex e : inst.out_edges(v)) {
    const VertexIndex w = inst.edge(e).head;
    if (visited & (std::uint64_t{1} << w)) continue;
    current.push_back(e);
    enumerate_paths(inst, w, visited, current, out);
    current.pop_back();
  }
}

std::vector<std::vector<EdgeIndex>> simple_paths(const Instance& inst, VertexIndex v) {
  std::vector<std::vector<EdgeIndex>> out;
  std::vector<EdgeIndex> current;
  enumerate_paths(inst, v, 0, current, out);
  return out;
}

// Cost of following `path` from time t, with its right derivative. Exact as
// a line once t is past every event of the flow.
std::pair<Rational, Rational> path_line(const FlowOverTime& flow, const std::vector<EdgeIndex>& path,
                                        const Rational& t0) {
  Rational t = t0, value(0), slope(0), clock(1);
  for (EdgeIndex e : path) {
    const Edge& edge = flow.instance().edge(e);
    const auto& queue = flow.edge_state(e).queue;
    const Rational q = queue.value_at(t);
    const Rational dq = queue.slope_at(t);
    value += edge.transit + q + edge.toll;
    slope += dq * clock;
    clock *= Rational(1) + dq;
    t += edge.transit + q;
  }
  return {value, slope};
}

void require_sorted_unique(std::vector<Rational>& times) {
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
}

}  // namespace

EdgeFlowState propagate_edge(const StepFunction& inflow, const Edge& edge, const Rational& initial_queue,
                             EdgeIndex index) {
  if (initial_queue.sign() < 0) throw Error(ErrorKind::InvalidArgument, "negative initial queue", edge.id);
  const Rational& nu = edge.capacity;
  std::vector<Segment> segments;
  Rational z = nu * initial_queue;

  for (std::size_t i = 0; i < inflow.piece_count(); ++i) {
    const Rational& rate = inflow.values()[i];
    const std::optional<Rational> end = inflow.piece_end(i);
    Rational cur = inflow.breakpoints()[i];
    while (true) {
      if (z.sign() > 0 && rate < nu) {
        // Queue drains at nu - rate; it may empty inside this piece.
        const Rational empty_at = cur + z / (nu - rate);
        if (!end || empty_at < *end) {
          segments.push_back({cur, z, rate - nu, nu});
          cur = empty_at;
          z = Rational(0);
          continue;
        }
        segments.push_back({cur, z, rate - nu, nu});
        z += (rate - nu) * (*end - cur);
        break;
      }
      if (z.sign() > 0 || rate > nu) {
        segments.push_back({cur, z, rate - nu, nu});
        if (end) z += (rate - nu) * (*end - cur);
        break;
      }
      segments.push_back({cur, Rational(0), Rational(0), rate});
      break;
    }
  }

  std::vector<Rational> starts, masses, exits;
  for (const auto& s : segments) {
    starts.push_back(s.start);
    masses.push_back(s.mass);
    exits.push_back(s.exit_rate);
  }
  EdgeFlowState state;
  state.edge = index;
  state.transit = edge.transit;
  state.capacity = nu;
  state.inflow = inflow;
  state.mass = PwlFunction(starts, std::move(masses), segments.back().slope);
  state.queue = state.mass.scaled(Rational(1) / nu);
  state.outflow = StepFunction(std::move(starts), std::move(exits)).delayed(edge.transit);
  state.initial_queue = initial_queue;
  return state;
}

Rational exit_time(const EdgeFlowState& state, const Rational& t) {
  return t + state.queue.value_at(t) + state.transit;
}

FlowOverTime::FlowOverTime(Instance instance, std::vector<StepFunction> inflows, std::vector<Rational> initial_queues,
                           std::optional<Rational> deficit_horizon)
    : instance_(std::move(instance)), deficit_horizon_(std::move(deficit_horizon)) {
  const std::size_t m = instance_.edge_count();
  if (inflows.size() != m) throw Error(ErrorKind::InvalidArgument, "one inflow function per edge required");
  if (initial_queues.empty()) initial_queues.assign(m, Rational(0));
  if (initial_queues.size() != m) throw Error(ErrorKind::InvalidArgument, "one initial queue per edge required");
  if (deficit_horizon_ && deficit_horizon_->sign() < 0) {
    throw Error(ErrorKind::InvalidArgument, "negative deficit horizon");
  }
  states_.reserve(m);
  for (EdgeIndex e = 0; e < m; ++e) {
    for (const auto& v : inflows[e].values()) {
      if (v.sign() < 0) throw Error(ErrorKind::InvalidArgument, "negative inflow rate", instance_.edge(e).id);
    }
    states_.push_back(propagate_edge(inflows[e], instance_.edge(e), initial_queues[e], e));
  }
}

Rational FlowOverTime::last_event() const {
  Rational last(0);
  for (const auto& s : states_) {
    last = max(last, s.inflow.breakpoints().back());
    last = max(last, s.queue.breakpoints().back());
  }
  return last;
}

ConservationReport check_conservation(const FlowOverTime& flow) {
  return check_conservation(flow, flow.deficit_horizon());
}

ConservationReport check_conservation(const FlowOverTime& flow, const std::optional<Rational>& deficit_horizon) {
  const Instance& inst = flow.instance();
  ConservationReport report;
  report.deficit_horizon = deficit_horizon;
  for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
    StepFunction net;
    for (EdgeIndex e : inst.out_edges(v)) net = net + flow.edge_state(e).inflow;
    for (EdgeIndex e : inst.in_edges(v)) net = net - flow.edge_state(e).outflow;
    for (std::size_t i = 0; i < net.piece_count(); ++i) {
      const Rational& start = net.breakpoints()[i];
      const std::optional<Rational> end = net.piece_end(i);
      const Rational& value = net.values()[i];
      std::string requirement;
      if (v == inst.source()) {
        if (value != inst.inflow()) requirement = "= " + inst.inflow().str();
      } else if (v == inst.sink()) {
        if (value.sign() > 0) requirement = "<= 0";
      } else if (!deficit_horizon) {
        if (!value.is_zero()) requirement = "= 0";
      } else {
        const bool before = start < *deficit_horizon;
        const bool after = !end || *end > *deficit_horizon;
        if (after && !value.is_zero()) {
          requirement = "= 0 for t >= " + deficit_horizon->str();
        } else if (before && value.sign() < 0) {
          requirement = ">= 0 for t < " + deficit_horizon->str();
        }
      }
      if (!requirement.empty()) report.violations.push_back({v, start, end, value, requirement});
    }
  }
  report.ok = report.violations.empty();
  return report;
}

CostEvaluator::CostEvaluator(const FlowOverTime& flow) : flow_(flow), acyclic_(flow.instance().is_acyclic()) {
  if (flow.instance().has_zero_transit_cycle()) {
    throw Error(ErrorKind::CycleGuard, "instance has a directed cycle of zero total transit time");
  }
  if (!acyclic_ && flow.instance().vertex_count() > 64) {
    throw Error(ErrorKind::SizeLimit, "cyclic cost evaluation supports at most 64 vertices");
  }
}

Rational CostEvaluator::cost(VertexIndex v, const Rational& t) {
  if (t.sign() < 0) throw Error(ErrorKind::NegativeTime, "time " + t.str() + " is negative");
  if (v == flow_.instance().sink()) return Rational(0);
  auto key = std::make_pair(v, t);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Rational best;
  if (acyclic_) {
    bool first = true;
    for (EdgeIndex e : flow_.instance().out_edges(v)) {
      Rational c = cost_via(e, t);
      if (first || c < best) best = std::move(c);
      first = false;
    }
  } else {
    // Every exit-time map is nondecreasing, so revisiting a vertex never
    // lowers the remaining cost and simple paths attain the minimum.
    best = *best_simple_path(v, t, 0);
  }
  memo_.emplace(std::move(key), best);
  return best;
}

std::optional<Rational> CostEvaluator::best_simple_path(VertexIndex v, const Rational& t, std::uint64_t visited) {
  const Instance& inst = flow_.instance();
  if (v == inst.sink()) return Rational(0);
  visited |= std::uint64_t{1} << v;
  std::optional<Rational> best;
  for (EdgeIndex e : inst.out_edges(v)) {
    const Edge& edge = inst.edge(e);
    if (visited & (std::uint64_t{1} << edge.head)) continue;
    const Rational q = flow_.edge_state(e).queue.value_at(t);
    auto rest = best_simple_path(edge.head, t + q + edge.transit, visited);
    if (!rest) continue;
    Rational c = edge.transit + q + edge.toll + *rest;
    if (!best || c < *best) best = std::move(c);
  }
  return best;
}

Rational CostEvaluator::cost_via(EdgeIndex e, const Rational& t) {
  const Edge& edge = flow_.instance().edge(e);
  const Rational q = flow_.edge_state(e).queue.value_at(t);
  return edge.transit + q + edge.toll + cost(edge.head, t + q + edge.transit);
}

std::vector<EdgeIndex> CostEvaluator::active_edges(const Rational& t) {
  std::vector<EdgeIndex> active;
  const Instance& inst = flow_.instance();
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    if (cost_via(e, t) == cost(inst.edge(e).tail, t)) active.push_back(e);
  }
  return active;
}

Rational cost_to_sink(const FlowOverTime& flow, VertexIndex v, const Rational& t) {
  CostEvaluator evaluator(flow);
  return evaluator.cost(v, t);
}

std::vector<EdgeIndex> active_edges(const FlowOverTime& flow, const Rational& t) {
  CostEvaluator evaluator(flow);
  return evaluator.active_edges(t);
}

EquilibriumReport check_equilibrium(const FlowOverTime& flow, const Rational& horizon,
                                    const std::vector<Rational>& extra_times) {
  if (horizon.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "horizon must be positive");
  const Instance& inst = flow.instance();
  CostEvaluator evaluator(flow);

  std::vector<Rational> events;
  for (const auto& s : flow.edge_states()) {
    events.insert(events.end(), s.inflow.breakpoints().begin(), s.inflow.breakpoints().end());
    events.insert(events.end(), s.queue.breakpoints().begin(), s.queue.breakpoints().end());
  }
  require_sorted_unique(events);
  std::vector<Rational> grid = events;
  for (const Rational& b : events) {
    for (const auto& s : flow.edge_states()) grid.push_back(exit_time(s, b));
  }
  grid.push_back(horizon);
  std::erase_if(grid, [&](const Rational& t) { return t > horizon; });
  require_sorted_unique(grid);
  std::vector<Rational> times = grid;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) times.push_back((grid[i] + grid[i + 1]) / Rational(2));

  EquilibriumReport report;
  const Rational tail_start = flow.last_event();
  if (tail_start <= horizon) {
    // Past tail_start every path cost is a line in t; the lower envelopes can
    // only bend where two lines cross, so checking the crossings and one
    // point beyond the last of them covers [tail_start, inf).
    report.tail_checked = true;
    report.tail_start = tail_start;
    Rational last = tail_start;
    for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
      if (v == inst.sink()) continue;
      // Lines of "edge e, then a simple path": the pieces of both c_v and of
      // every cost_via(e, .) leaving v.
      std::vector<std::pair<Rational, Rational>> lines;
      for (EdgeIndex e : inst.out_edges(v)) {
        for (auto path : simple_paths(inst, inst.edge(e).head)) {
          path.insert(path.begin(), e);
          lines.push_back(path_line(flow, path, tail_start));
        }
      }
      for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
          if (lines[i].second == lines[j].second) continue;
          const Rational cross =
              tail_start + (lines[j].first - lines[i].first) / (lines[i].second - lines[j].second);
          if (cross > tail_start) {
            times.push_back(cross);
            last = max(last, cross);
          }
        }
      }
    }
    times.push_back(tail_start);
    times.push_back(last + Rational(1));
  }
  times.insert(times.end(), extra_times.begin(), extra_times.end());
  require_sorted_unique(times);

  for (const Rational& t : times) {
    for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
      if (flow.edge_state(e).inflow.value_at(t).sign() <= 0) continue;
      Rational via = evaluator.cost_via(e, t);
      Rational best = evaluator.cost(inst.edge(e).tail, t);
      if (via != best) {
        report.violations.push_back({e, t, std::move(via), std::move(best), t >= tail_start && report.tail_checked});
      }
    }
  }
  report.checked_times = std::move(times);
  report.ok = report.violations.empty();
  return report;
}

}  // namespace tollflow
