// Acceptance harness: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tollflow/dynamics.hpp"
#include "tollflow/error.hpp"
#include "tollflow/instance.hpp"
#include "tollflow/pwl.hpp"
#include "tollflow/steady.hpp"
#include "tollflow/thin_flow.hpp"
#include "tollflow/trajectories.hpp"

using namespace tollflow;

namespace {

using Q = Rational;
using Vec = std::vector<Q>;

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (cond || !pass) {
      pass = pass && cond;
      return;
    }
    pass = false;
    note = what;
  }
};

Vec vec(std::initializer_list<Q> xs) { return Vec(xs); }

Q pow3(unsigned k) { return pow_int(Q(3), k); }

Outcome thin_flow_reproduction() {
  Outcome o;
  const Instance inst = builtin_instance("fig1_tf");
  const SourceThinFlow tf = solve_source_thin_flow(inst);
  o.require(tf.y == vec({1, 1, 1, 0, 0}), "y");
  o.require(tf.lambda == vec({1, 2, 3, 3, 4}), "lambda");
  const SinkThinFlow sink = source_to_sink(inst, tf);
  o.require(sink.x == vec({1, Q(1, 2), Q(1, 3), 0, 0}), "x");
  o.require(sink.mu == vec({3, 1, Q(1, 3), 1, 0}), "mu");
  return o;
}

Outcome non_uniqueness() {
  Outcome o;
  const Fig2Equilibria eq = fig2_equilibria();
  const Q horizon(5);
  for (const auto& [flow, label] : {std::pair{&eq.flow_f, &eq.label_f}, std::pair{&eq.flow_g, &eq.label_g}}) {
    const EquilibriumReport report = check_equilibrium(*flow, horizon);
    o.require(report.ok && report.violations.empty(), "equilibrium violation");
    std::vector<Q> times = report.checked_times;
    for (long k = 0; k <= 20; ++k) times.push_back(Q(k, 4));
    CostEvaluator costs(*flow);
    const VertexIndex s = flow->instance().source();
    for (const Q& t : times) o.require(costs.cost(s, t) == label->value_at(t), "label at " + t.str());
  }
  o.require(eq.label_f == PwlFunction::linear(2, 1) && eq.label_g == PwlFunction::linear(1, 1), "label form");
  const EquilibriumReport even = check_equilibrium(fig2_even_split(), horizon);
  o.require(!even.ok && !even.violations.empty(), "even split accepted");
  return o;
}

Outcome non_convergence() {
  Outcome o;
  const unsigned n = 12;
  const FlowOverTime flow = build_nonconvergent_flow(n);
  const PwlFunction& q1 = flow.edge_state(0).queue;
  const PwlFunction& q3 = flow.edge_state(2).queue;
  std::vector<Q> extra;
  std::vector<Q> slopes;
  for (unsigned i = 0; i < n; ++i) {
    const Q th = theta(i);
    const Q expect_q1 = (pow3(i) - Q(1)) / (Q(2) * pow3(i));
    const Q expect_q3 = (Q(2L * i - 1) * pow3(i) + Q(1)) / (Q(4) * pow3(i));
    o.require(q1.value_at(th) == expect_q1, "q1 at theta_" + std::to_string(i));
    o.require(q3.value_at(Q(1) + th) == expect_q3, "q3 at 1+theta_" + std::to_string(i));
    if (i > 0) o.require(th + q1.value_at(th) == Q(1) + theta(i - 1), "exit identity " + std::to_string(i));
    const Q mid = (th + theta(i + 1)) / Q(2);
    extra.push_back(th);
    extra.push_back(mid);
    if (Q(1) + mid < theta(n)) extra.push_back(Q(1) + mid);
    slopes.push_back(q1.slope_at(mid));
  }
  // The final phase runs forever, so the flow is an equilibrium only up to theta_n.
  const EquilibriumReport report = check_equilibrium(flow, theta(n), extra);
  o.require(report.ok, "equilibrium on phase grid");
  std::sort(slopes.begin(), slopes.end());
  o.require(std::unique(slopes.begin(), slopes.end()) == slopes.end(), "q1 slopes not distinct");
  return o;
}

Outcome convergence_rows() {
  Outcome o;
  const auto rows = convergence_table(12);
  o.require(rows.size() == 12 && rows.back().i == 11, "row count");
  if (!o.pass) return o;
  const Q gap = abs(rows.back().f1 - Q(1));
  o.require(gap == Q(2) / (pow3(12) + Q(1)), "exact gap " + gap.str());
  const std::string csv = convergence_csv(rows);
  std::istringstream in(csv);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  std::vector<std::string> cells;
  std::stringstream cs(last);
  for (std::string c; std::getline(cs, c, ',');) cells.push_back(c);
  o.require(cells.size() == 11 && cells[0] == "11", "csv row 11");
  if (o.pass) o.require(std::fabs(std::stod(cells[7]) - 1.0) < 1e-4, "decimal gap");
  return o;
}

Outcome steady_fig3() {
  Outcome o;
  const Instance inst = builtin_instance("fig3_ss");
  const SteadyStateSolution sol = compute_steady_state(inst);
  o.require(sol.objective == Q(3), "objective " + sol.objective.str());
  o.require(sol.inflow == vec({1, 1, 2}), "inflow");
  o.require(sol.growth == vec({0, 0, 1}), "growth");
  o.require(certify_steady_equilibrium(inst, sol).ok, "certificate");
  const Q phase11 = convergence_table(12).back().f1;
  o.require(abs(phase11 - sol.inflow[0]) <= Q(2) / (pow3(12) + Q(1)), "trajectory limit");
  return o;
}

Outcome steady_fig5() {
  Outcome o;
  const Instance inst = builtin_instance("fig5_deficit");
  const SteadyStateSolution sol = compute_steady_state(inst);
  o.require(sol.objective == Q(5), "objective " + sol.objective.str());
  o.require(sol.initial_queue[2] - sol.initial_queue[1] == Q(1), "q3 - q2");
  o.require(tau_max(inst) == Q(2), "tau_max");
  const FlowOverTime flow = induced_flow(inst, sol);
  const ConservationReport deficit = check_conservation(flow, Q(2));
  o.require(deficit.ok && deficit.violations.empty(), "deficit conservation");
  return o;
}

// Random instances: s = 0, t = n - 1, a Hamiltonian s-t path keeps every vertex reachable.
struct Generator {
  std::mt19937_64 rng{0x5eed1234};

  Q pick(const std::vector<Q>& options) {
    return options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
  }

  std::optional<Instance> next() {
    const int n = std::uniform_int_distribution<int>(2, 6)(rng);
    const int m_max = std::min(10, n * (n - 1));
    const int m = std::uniform_int_distribution<int>(n - 1, std::max(n - 1, m_max))(rng);
    InstanceSpec spec;
    for (int v = 0; v < n; ++v) spec.vertices.push_back(v == 0 ? "s" : v == n - 1 ? "t" : "v" + std::to_string(v));
    spec.source = "s";
    spec.sink = "t";
    spec.inflow = pick({Q(1), Q(2), Q(3, 2), Q(1, 2), Q(3)});
    std::vector<int> order(n - 2);
    for (int v = 1; v < n - 1; ++v) order[v - 1] = v;
    std::shuffle(order.begin(), order.end(), rng);
    order.insert(order.begin(), 0);
    order.push_back(n - 1);
    auto add = [&](int a, int b) {
      InstanceSpec::EdgeSpec e;
      e.id = "e" + std::to_string(spec.edges.size() + 1);
      e.tail = spec.vertices[a];
      e.head = spec.vertices[b];
      e.transit = pick({Q(0), Q(1, 2), Q(1), Q(2), Q(3, 2)});
      e.capacity = pick({Q(1, 2), Q(1), Q(2), Q(3, 2), Q(1, 3)});
      e.toll = pick({Q(0), Q(0), Q(1), Q(1, 2)});
      spec.edges.push_back(e);
    };
    for (std::size_t k = 0; k + 1 < order.size(); ++k) add(order[k], order[k + 1]);
    std::uniform_int_distribution<int> vertex(0, n - 1);
    while (static_cast<int>(spec.edges.size()) < m) {
      const int a = vertex(rng), b = vertex(rng);
      if (a == b || a == n - 1 || b == 0) continue;
      add(a, b);
    }
    try {
      Instance inst = validate_instance(spec);
      if (inst.has_zero_transit_cycle()) return std::nullopt;
      return inst;
    } catch (const Error&) {
      return std::nullopt;
    }
  }
};

Outcome property_suite() {
  Outcome o;
  Generator gen;
  int accepted = 0, attempts = 0, cyclic = 0, queued = 0, idle_edges = 0;
  while (accepted < 200 && attempts < 5000) {
    ++attempts;
    const auto maybe = gen.next();
    if (!maybe) continue;
    const Instance& inst = *maybe;
    ++accepted;
    const std::string tag = "instance " + std::to_string(accepted) + ": ";
    const VertexIndex s = inst.source(), t = inst.sink();

    const SourceThinFlow tf = solve_source_thin_flow(inst);
    o.require(verify_source_thin_flow(inst, tf.y, tf.lambda).ok, tag + "(a) source thin flow");
    for (VertexIndex v = 0; v < inst.vertex_count(); ++v)
      o.require(tf.lambda[s] <= tf.lambda[v] && tf.lambda[v] <= tf.lambda[t], tag + "(a) label bounds");

    const SinkThinFlow sink = source_to_sink(inst, tf);
    o.require(verify_sink_thin_flow(inst, sink.x, sink.mu).ok, tag + "(b) sink thin flow");

    const EdgePartition part = partition_edges(inst, tf.lambda);
    cyclic += inst.is_acyclic() ? 0 : 1;
    queued += part.gt.empty() ? 0 : 1;
    idle_edges += part.lt.empty() ? 0 : 1;
    const SteadyLp lp = build_steady_lp(inst, tf.lambda, part);
    const PrimalDual pd = solve_primal_dual(inst, lp);
    const Q primal = primal_objective(lp, pd.y);
    o.require(primal == dual_objective(inst, lp, pd.dual) && primal == pd.objective, tag + "(c) duality gap");

    o.require(verify_source_thin_flow(inst, pd.y, tf.lambda).ok, tag + "(d) LP optimum is a thin flow");

    const DualSolution dual = normalize_dual(inst, tf.lambda, lp, pd.y, pd.dual);
    o.require(dual.d[t].is_zero(), tag + "(e) d_t");
    for (const Q& p : dual.p) o.require(p.sign() >= 0, tag + "(e) p >= 0");
    o.require(dual_objective(inst, lp, dual) == pd.objective, tag + "(e) objective");

    const SteadyStateSolution sol = induce_flow(inst, tf.lambda, lp, pd.y, dual);
    const FlowOverTime flow = induced_flow(inst, sol);
    const Q T = tau_max(inst);
    o.require(check_conservation(flow, T).ok, tag + "(f) deficit conservation");
    for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
      const Edge& edge = inst.edge(e);
      const Q expect =
          part.of_edge[e] == EdgeClass::Greater ? tf.lambda[edge.head] / tf.lambda[edge.tail] - Q(1) : Q(0);
      o.require(flow.edge_state(e).queue.final_slope() == expect, tag + "(f) growth " + edge.id);
    }
    o.require(certify_steady_equilibrium(inst, sol).ok, tag + "(f) certificate");
    CostEvaluator costs(flow);
    for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
      if (!sol.flow_carrying[v]) continue;
      o.require(costs.cost(v, Q(0)) == dual.d[v], tag + "(f) label intercept " + inst.vertex_name(v));
      const Q slope = costs.cost(v, T + Q(1)) - costs.cost(v, T);
      o.require(slope == tf.lambda[t] / tf.lambda[v] - Q(1), tag + "(f) label slope " + inst.vertex_name(v));
    }

    for (EdgeIndex e : part.lt) o.require(pd.y[e].is_zero(), tag + "(g) y on E<");
  }
  o.require(accepted >= 200, "only " + std::to_string(accepted) + " instances generated");
  if (o.pass)
    o.note = std::to_string(accepted) + " instances, " + std::to_string(cyclic) + " cyclic, " + std::to_string(queued) +
             " with growing queues, " + std::to_string(idle_edges) + " with E< edges";
  return o;
}

// Exact event-driven queue oracle on a single edge; independent of propagate_edge.
struct QueueOracle {
  std::vector<Q> times;
  std::vector<Q> mass;
};

QueueOracle oracle(const StepFunction& inflow, const Q& nu, const Q& z0, const Q& until) {
  QueueOracle out;
  Q t(0), z = z0;
  out.times.push_back(t);
  out.mass.push_back(z);
  const auto& bps = inflow.breakpoints();
  for (std::size_t i = 0; i < bps.size(); ++i) {
    const Q end = i + 1 < bps.size() ? min(bps[i + 1], until) : until;
    if (end <= t) continue;
    const Q rate = inflow.values()[i] - nu;
    if (rate.sign() < 0 && z.sign() > 0 && t + z / -rate < end) {
      t = t + z / -rate;
      z = Q(0);
      out.times.push_back(t);
      out.mass.push_back(z);
    }
    if (z.sign() > 0 || rate.sign() > 0) z = z + rate * (end - t);
    t = end;
    out.times.push_back(t);
    out.mass.push_back(z);
  }
  return out;
}

Outcome dynamics_oracle() {
  Outcome o;
  std::mt19937_64 rng(20261014);
  std::uniform_int_distribution<int> small(0, 8);
  const double dt = 1.0 / 1024;
  const Q horizon(8);
  for (int scenario = 0; scenario < 50; ++scenario) {
    const std::string tag = "scenario " + std::to_string(scenario) + ": ";
    Edge edge{"e", 0, 1, Q(small(rng), 2), Q(1 + small(rng), 1 + small(rng) % 3), Q(0)};
    const Q q0(small(rng) % 3, 2);
    std::vector<Q> bps{Q(0)}, vals;
    const int pieces = 1 + small(rng) % 5;
    for (int k = 1; k < pieces; ++k) bps.push_back(bps.back() + Q(1 + small(rng), 1 + small(rng) % 4));
    for (int k = 0; k < pieces; ++k) vals.push_back(Q(small(rng), 1 + small(rng) % 3));
    const StepFunction inflow(bps, vals);
    const EdgeFlowState state = propagate_edge(inflow, edge, q0);
    const double nu = edge.capacity.to_double();

    // Euler on the mass; stepping at multiples of dt until horizon.
    const int steps = static_cast<int>(horizon.to_double() / dt);
    std::vector<double> z(steps + 1);
    z[0] = (edge.capacity * q0).to_double();
    for (int k = 0; k < steps; ++k) {
      const double f = inflow.value_at(Q(k, 1024)).to_double();
      z[k + 1] = std::max(0.0, z[k] + dt * (f - nu));
    }
    std::uniform_int_distribution<int> checkpoint(0, steps);
    for (int c = 0; c < 100; ++c) {
      const int k = checkpoint(rng);
      const double exact = state.queue.value_at(Q(k, 1024)).to_double();
      o.require(std::fabs(exact - z[k] / nu) <= 1.0 / 256, tag + "decimal checkpoint");
    }

    const QueueOracle exact = oracle(inflow, edge.capacity, edge.capacity * q0, horizon);
    for (std::size_t k = 0; k < exact.times.size(); ++k)
      o.require(state.queue.value_at(exact.times[k]) == exact.mass[k] / edge.capacity,
                tag + "breakpoint " + exact.times[k].str());
    for (const Q& b : state.queue.breakpoints()) {
      if (b > horizon) continue;
      o.require(std::find(exact.times.begin(), exact.times.end(), b) != exact.times.end(),
                tag + "unexpected breakpoint " + b.str());
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"thin-flow reproduction", thin_flow_reproduction},
      {"non-uniqueness", non_uniqueness},
      {"non-convergence", non_convergence},
      {"convergence table", convergence_rows},
      {"steady state fig3", steady_fig3},
      {"steady state fig5 deficit", steady_fig5},
      {"random property suite", property_suite},
      {"dynamics micro-oracle", dynamics_oracle},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.note = std::string("exception: ") + ex.what();
    }
    if (!o.pass) ++failed;
    std::printf("[%s] criterion %zu: %s%s%s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.note.empty() ? "" : " -- ", o.note.c_str());
  }
  return failed == 0 ? 0 : 1;
}
