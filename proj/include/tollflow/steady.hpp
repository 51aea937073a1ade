#pragma once

#include <optional>
#include <vector>

#include "tollflow/dynamics.hpp"
#include "tollflow/error.hpp"
#include "tollflow/instance.hpp"
#include "tollflow/thin_flow.hpp"

namespace tollflow {

// min sum c_hat_e y_e over s-t flows of value u with y_e = bound_e on fixed
// edges (E^>) and 0 <= y_e <= bound_e elsewhere.
struct SteadyLp {
  std::vector<Rational> reduced_cost;  // (lambda_t / lambda_w) tau_e + c_e
  std::vector<Rational> bound;         // lambda_w nu_e
  std::vector<bool> fixed;
  EdgePartition partition;
  Rational flow_value;
};

struct DualSolution {
  std::vector<Rational> d;  // per vertex
  std::vector<Rational> p;  // per edge
};

struct PrimalDual {
  std::vector<Rational> y;
  DualSolution dual;
  Rational objective;
};

SteadyLp build_steady_lp(const Instance& inst, const std::vector<Rational>& lambda, const EdgePartition& partition);

// Throws PrimalInfeasible when no feasible flow exists.
PrimalDual solve_primal_dual(const Instance& inst, const SteadyLp& lp);

Rational primal_objective(const SteadyLp& lp, const std::vector<Rational>& y);
Rational dual_objective(const Instance& inst, const SteadyLp& lp, const DualSolution& dual);
// Edges where d_v - d_w - p_e > c_hat_e, or p_e < 0 on a capped edge.
std::vector<EdgeIndex> dual_infeasible_edges(const Instance& inst, const SteadyLp& lp, const DualSolution& dual);

// Shifts an optimal dual to d_t = 0 and p >= 0 without changing the
// objective. Negative entries are removed most negative first, ties by
// edge index.
DualSolution normalize_dual(const Instance& inst, const std::vector<Rational>& lambda, const SteadyLp& lp,
                            const std::vector<Rational>& y, DualSolution dual);

struct SteadyStateSolution {
  std::vector<Rational> lambda;
  SteadyLp lp;
  std::vector<Rational> y;
  DualSolution dual;
  std::vector<Rational> inflow;         // y_e / lambda_v
  std::vector<Rational> initial_queue;  // (lambda_w / lambda_t) p_e
  std::vector<Rational> growth;         // queue slope
  std::vector<bool> flow_carrying;
  std::vector<Rational> label_intercept;  // d_v
  std::vector<Rational> label_slope;      // lambda_t / lambda_v - 1 on flow-carrying vertices
  Rational objective;
  bool certified = false;
};

// Throws NegativeQueue if the dual is not normalized.
SteadyStateSolution induce_flow(const Instance& inst, const std::vector<Rational>& lambda, const SteadyLp& lp,
                                const std::vector<Rational>& y, const DualSolution& dual);

// Constant inflows with the induced initial queues, as a deficit flow until
// tau_max.
FlowOverTime induced_flow(const Instance& inst, const SteadyStateSolution& sol);

struct CertificateReport {
  bool ok = true;
  std::vector<Violation> violations;
  ConservationReport conservation;
  EquilibriumReport equilibrium;
  void add(std::string condition, std::string subject, std::string detail);
};

CertificateReport certify_steady_equilibrium(const Instance& inst, const SteadyStateSolution& sol);

class CertificationError : public Error {
 public:
  explicit CertificationError(CertificateReport report);
  const CertificateReport& report() const { return report_; }

 private:
  CertificateReport report_;
};

// Thin flow, LP, normalization, induced flow and certificate. Only certified
// solutions are returned.
SteadyStateSolution compute_steady_state(const Instance& inst,
                                         const ThinFlowOptions& options = thin_flow_options_from_env());

}  // namespace tollflow
