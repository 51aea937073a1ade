#include "tollflow/steady.hpp"

#include <string>

#include "min_cost_flow.hpp"

namespace tollflow {

SteadyLp build_steady_lp(const Instance& inst, const std::vector<Rational>& lambda, const EdgePartition& partition) {
  SteadyLp lp;
  const Rational& lambda_t = lambda[inst.sink()];
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    const Edge& edge = inst.edge(e);
    const Rational& lambda_w = lambda[edge.head];
    lp.reduced_cost.push_back(lambda_t / lambda_w * edge.transit + edge.toll);
    lp.bound.push_back(lambda_w * edge.capacity);
    lp.fixed.push_back(partition.of_edge[e] == EdgeClass::Greater);
  }
  lp.partition = partition;
  lp.flow_value = inst.inflow();
  return lp;
}

Rational primal_objective(const SteadyLp& lp, const std::vector<Rational>& y) {
  Rational total(0);
  for (std::size_t e = 0; e < y.size(); ++e) total += lp.reduced_cost[e] * y[e];
  return total;
}

Rational dual_objective(const Instance& inst, const SteadyLp& lp, const DualSolution& dual) {
  Rational total = lp.flow_value * (dual.d[inst.source()] - dual.d[inst.sink()]);
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) total -= lp.bound[e] * dual.p[e];
  return total;
}

std::vector<EdgeIndex> dual_infeasible_edges(const Instance& inst, const SteadyLp& lp, const DualSolution& dual) {
  std::vector<EdgeIndex> bad;
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    const Edge& edge = inst.edge(e);
    const bool slack_ok = dual.d[edge.tail] - dual.d[edge.head] - dual.p[e] <= lp.reduced_cost[e];
    const bool sign_ok = lp.fixed[e] || dual.p[e].sign() >= 0;
    if (!slack_ok || !sign_ok) bad.push_back(e);
  }
  return bad;
}

PrimalDual solve_primal_dual(const Instance& inst, const SteadyLp& lp) {
  const std::size_t n = inst.vertex_count();
  std::vector<Rational> supply(n, Rational(0));
  supply[inst.source()] += lp.flow_value;
  supply[inst.sink()] -= lp.flow_value;
  std::vector<mcf::Arc> arcs;
  std::vector<EdgeIndex> arc_edge;
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    const Edge& edge = inst.edge(e);
    if (lp.fixed[e]) {
      supply[edge.tail] -= lp.bound[e];
      supply[edge.head] += lp.bound[e];
    } else {
      arcs.push_back({edge.tail, edge.head, lp.bound[e], lp.reduced_cost[e]});
      arc_edge.push_back(e);
    }
  }
  const auto result = mcf::solve(n, arcs, supply);
  if (!result) throw Error(ErrorKind::PrimalInfeasible, "no flow of value " + lp.flow_value.str() + " meets the bounds");

  PrimalDual out;
  out.y.assign(inst.edge_count(), Rational(0));
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    if (lp.fixed[e]) out.y[e] = lp.bound[e];
  }
  for (std::size_t a = 0; a < arcs.size(); ++a) out.y[arc_edge[a]] = result->flow[a];

  for (std::size_t v = 0; v < n; ++v) out.dual.d.push_back(-result->potential[v]);
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    const Edge& edge = inst.edge(e);
    const Rational slack = out.dual.d[edge.tail] - out.dual.d[edge.head] - lp.reduced_cost[e];
    out.dual.p.push_back(lp.fixed[e] ? slack : max(Rational(0), slack));
  }

  out.objective = primal_objective(lp, out.y);
  const Rational dual_value = dual_objective(inst, lp, out.dual);
  if (dual_value != out.objective) {
    throw Error(ErrorKind::UnboundedDual,
                "duality gap: primal " + out.objective.str() + ", dual " + dual_value.str());
  }
  if (!dual_infeasible_edges(inst, lp, out.dual).empty()) {
    throw Error(ErrorKind::UnboundedDual, "recovered dual is infeasible");
  }
  return out;
}

DualSolution normalize_dual(const Instance& inst, const std::vector<Rational>& lambda, const SteadyLp& lp,
                            const std::vector<Rational>& y, DualSolution dual) {
  (void)y;
  const Rational target = dual_objective(inst, lp, dual);
  const Rational shift = dual.d[inst.sink()];
  for (auto& d : dual.d) d -= shift;

  for (std::size_t iteration = 0;; ++iteration) {
    std::optional<EdgeIndex> worst;
    for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
      if (dual.p[e].sign() < 0 && (!worst || dual.p[e] < dual.p[*worst])) worst = e;
    }
    if (!worst) break;
    const std::string& id = inst.edge(*worst).id;
    if (iteration >= inst.edge_count()) {
      throw Error(ErrorKind::NormalizationStuck, "negative p persists after |E| cut shifts", id);
    }
    if (!lp.fixed[*worst]) throw Error(ErrorKind::NormalizationStuck, "negative p on a capped edge", id);

    const Rational delta = dual.p[*worst];
    const Rational& level = lambda[inst.edge(*worst).head];
    std::vector<bool> in_s(inst.vertex_count());
    for (VertexIndex v = 0; v < inst.vertex_count(); ++v) in_s[v] = lambda[v] < level;
    for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
      if (in_s[inst.edge(e).tail] && !in_s[inst.edge(e).head]) dual.p[e] -= delta;
    }
    for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
      if (in_s[v]) dual.d[v] -= delta;
    }
    if (dual_objective(inst, lp, dual) != target) {
      throw Error(ErrorKind::NormalizationStuck, "cut shift changed the dual objective", id);
    }
  }
  return dual;
}

SteadyStateSolution induce_flow(const Instance& inst, const std::vector<Rational>& lambda, const SteadyLp& lp,
                                const std::vector<Rational>& y, const DualSolution& dual) {
  SteadyStateSolution sol;
  sol.lambda = lambda;
  sol.lp = lp;
  sol.y = y;
  sol.dual = dual;
  const Rational& lambda_t = lambda[inst.sink()];
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    const Edge& edge = inst.edge(e);
    sol.inflow.push_back(y[e] / lambda[edge.tail]);
    Rational q = lambda[edge.head] / lambda_t * dual.p[e];
    if (q.sign() < 0) throw Error(ErrorKind::NegativeQueue, "initial queue " + q.str() + " < 0", edge.id);
    sol.initial_queue.push_back(std::move(q));
    sol.growth.push_back(lp.fixed[e] ? lambda[edge.head] / lambda[edge.tail] - Rational(1) : Rational(0));
  }
  sol.flow_carrying = flow_carrying_vertices(inst, y);
  for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
    sol.label_intercept.push_back(dual.d[v]);
    sol.label_slope.push_back(sol.flow_carrying[v] ? lambda_t / lambda[v] - Rational(1) : Rational(0));
  }
  sol.objective = primal_objective(lp, y);
  return sol;
}

FlowOverTime induced_flow(const Instance& inst, const SteadyStateSolution& sol) {
  std::vector<StepFunction> inflows;
  for (const auto& rate : sol.inflow) inflows.push_back(StepFunction::constant(rate));
  return FlowOverTime(inst, std::move(inflows), sol.initial_queue, tau_max(inst));
}

void CertificateReport::add(std::string condition, std::string subject, std::string detail) {
  ok = false;
  violations.push_back({std::move(condition), std::move(subject), std::move(detail)});
}

CertificationError::CertificationError(CertificateReport report)
    : Error(ErrorKind::CertificationFailed,
            "steady state failed " + std::to_string(report.violations.size()) + " certificate check(s)" +
                (report.violations.empty() ? std::string()
                                           : ": " + report.violations.front().condition + " at " +
                                                 report.violations.front().subject)),
      report_(std::move(report)) {}

CertificateReport certify_steady_equilibrium(const Instance& inst, const SteadyStateSolution& sol) {
  CertificateReport report;
  const SteadyLp& lp = sol.lp;
  const DualSolution& dual = sol.dual;

  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    const Edge& edge = inst.edge(e);
    const Rational lhs = dual.d[edge.tail] - dual.d[edge.head] - dual.p[e];
    if (lhs > lp.reduced_cost[e]) {
      report.add("dual-feasibility", edge.id, lhs.str() + " > " + lp.reduced_cost[e].str());
    } else if (sol.inflow[e].sign() > 0 && lhs != lp.reduced_cost[e]) {
      report.add("dual-tightness", edge.id, lhs.str() + " < " + lp.reduced_cost[e].str() + " on a used edge");
    }
    if (dual.p[e].sign() < 0) report.add("p-nonnegative", edge.id, "p = " + dual.p[e].str());
    if (!(dual.p[e] * (lp.bound[e] - sol.y[e])).is_zero()) {
      report.add("complementary-slackness", edge.id, "p = " + dual.p[e].str() + ", slack " + (lp.bound[e] - sol.y[e]).str());
    }
  }
  if (!dual.d[inst.sink()].is_zero()) report.add("d-sink", inst.vertex_name(inst.sink()), "d_t = " + dual.d[inst.sink()].str());
  const Rational dual_value = dual_objective(inst, lp, dual);
  if (dual_value != sol.objective) {
    report.add("strong-duality", "", "primal " + sol.objective.str() + ", dual " + dual_value.str());
  }
  if (!report.ok) return report;

  const FlowOverTime flow = induced_flow(inst, sol);
  const Rational t_max = tau_max(inst);
  report.conservation = check_conservation(flow, t_max);
  if (!report.conservation.ok) {
    for (const auto& v : report.conservation.violations) {
      report.add("deficit-conservation", inst.vertex_name(v.vertex),
                 "net outflow " + v.net_outflow.str() + " from " + v.start.str() + " (" + v.requirement + ")");
    }
  }

  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    const PwlFunction expected = PwlFunction::linear(sol.initial_queue[e], sol.growth[e]);
    if (flow.edge_state(e).queue != expected) {
      report.add("growth-rate", inst.edge(e).id,
                 "propagated queue is not " + sol.initial_queue[e].str() + " + " + sol.growth[e].str() + " t");
    }
  }

  CostEvaluator costs(flow);
  const std::vector<Rational> times{Rational(0), t_max, t_max + Rational(1)};
  for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
    if (!sol.flow_carrying[v]) continue;
    for (const auto& t : times) {
      const Rational expected = sol.label_intercept[v] + sol.label_slope[v] * t;
      const Rational actual = costs.cost(v, t);
      if (actual != expected) {
        report.add("cost-label", inst.vertex_name(v),
                   "c(" + t.str() + ") = " + actual.str() + ", expected " + expected.str());
      }
    }
  }

  report.equilibrium = check_equilibrium(flow, t_max + Rational(1));
  for (const auto& v : report.equilibrium.violations) {
    report.add("equilibrium", inst.edge(v.edge).id,
               "used at " + v.time.str() + " with cost " + v.path_cost.str() + " > " + v.min_cost.str());
  }
  return report;
}

SteadyStateSolution compute_steady_state(const Instance& inst, const ThinFlowOptions& options) {
  const SourceThinFlow thin = solve_source_thin_flow(inst, options);
  const EdgePartition partition = partition_edges(inst, thin.lambda);
  const SteadyLp lp = build_steady_lp(inst, thin.lambda, partition);
  const PrimalDual pd = solve_primal_dual(inst, lp);
  const DualSolution dual = normalize_dual(inst, thin.lambda, lp, pd.y, pd.dual);
  SteadyStateSolution sol = induce_flow(inst, thin.lambda, lp, pd.y, dual);
  CertificateReport report = certify_steady_equilibrium(inst, sol);
  if (!report.ok) throw CertificationError(std::move(report));
  sol.certified = true;
  return sol;
}

}  // namespace tollflow
