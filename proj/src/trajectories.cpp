#include "tollflow/trajectories.hpp"

#include <algorithm>
#include <sstream>

#include "tollflow/error.hpp"

namespace tollflow {

namespace {

using EdgeSpec = InstanceSpec::EdgeSpec;

Rational r(long p, long q = 1) { return Rational(p, q); }

Instance make(std::vector<std::string> vertices, Rational inflow, std::vector<EdgeSpec> edges) {
  InstanceSpec spec;
  spec.vertices = std::move(vertices);
  spec.source = "s";
  spec.sink = "t";
  spec.inflow = std::move(inflow);
  spec.edges = std::move(edges);
  return validate_instance(spec);
}

Rational pow3(unsigned i) { return pow_int(Rational(3), i); }

// Index of the phase containing t, capped at `last`.
unsigned phase_of(const Rational& t, unsigned last) {
  unsigned i = 0;
  while (i < last && theta(i + 1) <= t) ++i;
  return i;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"fig1_tf", "fig2_mul", "fig3_ss", "fig5_deficit"};
  return names;
}

Instance builtin_instance(std::string_view name) {
  // Edge fields: id, tail, head, transit, capacity, toll.
  if (name == "fig1_tf") {
    return make({"s", "v", "w", "u", "t"}, r(1),
                {{"e1", "s", "v", r(1), r(1, 2), r(0)},
                 {"e2", "v", "w", r(1), r(1, 3), r(0)},
                 {"e3", "w", "t", r(1), r(1, 4), r(0)},
                 {"e4", "w", "u", r(1), r(1), r(0)},
                 {"e5", "u", "v", r(1), r(1), r(0)}});
  }
  if (name == "fig2_mul") {
    return make({"s", "v", "t"}, r(2),
                {{"e1", "s", "v", r(0), r(2), r(2)},
                 {"e2", "s", "v", r(1), r(2), r(0)},
                 {"e3", "v", "t", r(0), r(1), r(0)}});
  }
  if (name == "fig3_ss") {
    return make({"s", "v", "t"}, r(2),
                {{"e1", "s", "v", r(0), r(1), r(1)},
                 {"e2", "s", "v", r(1), r(1), r(0)},
                 {"e3", "v", "t", r(0), r(1), r(0)}});
  }
  if (name == "fig5_deficit") {
    return make({"s", "v", "t"}, r(2),
                {{"e1", "s", "v", r(1), r(2), r(0)},
                 {"e2", "v", "t", r(2), r(1), r(0)},
                 {"e3", "v", "t", r(1), r(1), r(0)}});
  }
  throw Error(ErrorKind::UnknownName, "unknown built-in instance '" + std::string(name) + "'", std::string(name));
}

Rational theta(unsigned i) {
  const Rational p = pow3(i);
  return (Rational(2L * i + 1) * p - Rational(1)) / (Rational(4) * p);
}

PhaseRates nonconvergent_phase_rates(unsigned i) {
  const Rational p = pow3(i + 1);
  PhaseRates rates;
  rates.f1 = (p + Rational(3)) / (p + Rational(1));
  rates.f2 = (p - Rational(1)) / (p + Rational(1));
  rates.f3_delayed = rates.f2 + Rational(1);
  return rates;
}

Rational closed_form_queue(QueueFormula which, unsigned i) {
  const Rational p = pow3(i);
  if (which == QueueFormula::Q1AtTheta) return (p - Rational(1)) / (Rational(2) * p);
  return (Rational(2L * i - 1) * p + Rational(1)) / (Rational(4) * p);
}

Rational summed_queue(QueueFormula which, unsigned i) {
  Rational total(0);
  for (unsigned j = 0; j < i; ++j) {
    const PhaseRates rates = nonconvergent_phase_rates(j);
    const Rational excess = which == QueueFormula::Q1AtTheta ? rates.f1 - Rational(1) : rates.f3_delayed - Rational(1);
    total += (theta(j + 1) - theta(j)) * excess;
  }
  return total;
}

std::vector<StepFunction> PhaseSchedule::inflows() const {
  std::vector<StepFunction> out;
  if (phases.empty()) return out;
  for (std::size_t e = 0; e < phases.front().rates.size(); ++e) {
    std::vector<Rational> bps, vals;
    for (const auto& phase : phases) {
      bps.push_back(phase.start);
      vals.push_back(phase.rates[e]);
    }
    out.emplace_back(std::move(bps), std::move(vals));
  }
  return out;
}

PhaseSchedule nonconvergent_schedule(unsigned n_phases) {
  if (n_phases == 0) throw Error(ErrorKind::InvalidArgument, "at least one phase is required");
  const unsigned last = n_phases - 1;
  std::vector<Rational> starts;
  for (unsigned i = 0; i < n_phases; ++i) {
    starts.push_back(theta(i));
    starts.push_back(Rational(1) + theta(i));
  }
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

  PhaseSchedule schedule;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const Rational& t = starts[k];
    const PhaseRates own = nonconvergent_phase_rates(phase_of(t, last));
    Rational f3(1);
    if (t >= Rational(1)) f3 = nonconvergent_phase_rates(phase_of(t - Rational(1), last)).f3_delayed;
    Phase phase;
    phase.start = t;
    if (k + 1 < starts.size()) phase.end = starts[k + 1];
    phase.rates = {own.f1, own.f2, f3};
    schedule.phases.push_back(std::move(phase));
  }
  return schedule;
}

FlowOverTime build_nonconvergent_flow(unsigned n_phases) {
  return FlowOverTime(builtin_instance("fig3_ss"), nonconvergent_schedule(n_phases).inflows());
}

Fig2Equilibria fig2_equilibria() {
  const Instance inst = builtin_instance("fig2_mul");
  const StepFunction two = StepFunction::constant(Rational(2));
  const StepFunction zero;
  const StepFunction late({Rational(0), Rational(1)}, {Rational(0), Rational(2)});
  return Fig2Equilibria{FlowOverTime(inst, {two, zero, two}), FlowOverTime(inst, {zero, two, late}),
                        PwlFunction::linear(Rational(2), Rational(1)), PwlFunction::linear(Rational(1), Rational(1))};
}

FlowOverTime fig2_even_split() {
  const StepFunction one = StepFunction::constant(Rational(1));
  const StepFunction merged({Rational(0), Rational(1)}, {Rational(1), Rational(2)});
  return FlowOverTime(builtin_instance("fig2_mul"), {one, one, merged});
}

std::vector<ConvergenceRow> convergence_table(unsigned n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "the convergence table needs at least one row");
  std::vector<ConvergenceRow> rows;
  for (unsigned i = 0; i < n; ++i) {
    const PhaseRates rates = nonconvergent_phase_rates(i);
    rows.push_back({i, theta(i), rates.f1, rates.f2, closed_form_queue(QueueFormula::Q1AtTheta, i),
                    closed_form_queue(QueueFormula::Q3AtOnePlusTheta, i)});
  }
  return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out << "i,theta,f1,f2,q1,q3,theta_dec,f1_dec,f2_dec,q1_dec,q3_dec\n";
  for (const auto& row : rows) {
    out << row.i << ',' << row.theta << ',' << row.f1 << ',' << row.f2 << ',' << row.q1 << ',' << row.q3 << ','
        << row.theta.to_decimal() << ',' << row.f1.to_decimal() << ',' << row.f2.to_decimal() << ','
        << row.q1.to_decimal() << ',' << row.q3.to_decimal() << '\n';
  }
  return out.str();
}

}  // namespace tollflow
