#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tollflow/dynamics.hpp"
#include "tollflow/instance.hpp"

namespace tollflow {

// fig1_tf, fig2_mul, fig3_ss or fig5_deficit; throws UnknownName otherwise.
Instance builtin_instance(std::string_view name);
const std::vector<std::string>& builtin_names();

// theta_i = ((2i + 1) 3^i - 1) / (4 3^i), start of phase i on fig3_ss.
Rational theta(unsigned i);

struct PhaseRates {
  Rational f1;
  Rational f2;
  Rational f3_delayed;  // f3 on [1 + theta_i, 1 + theta_{i+1}) = f2 + 1
};

PhaseRates nonconvergent_phase_rates(unsigned i);

enum class QueueFormula { Q1AtTheta, Q3AtOnePlusTheta };

// Closed forms q1(theta_i) = (3^i - 1) / (2 3^i) and
// q3(1 + theta_i) = ((2i - 1) 3^i + 1) / (4 3^i).
Rational closed_form_queue(QueueFormula which, unsigned i);
// The same values as the finite sums over phases 0..i-1 (empty for i = 0).
Rational summed_queue(QueueFormula which, unsigned i);

struct Phase {
  Rational start;
  std::optional<Rational> end;  // nullopt: unbounded
  std::vector<Rational> rates;  // per edge
};

struct PhaseSchedule {
  std::vector<Phase> phases;
  std::vector<StepFunction> inflows() const;
};

// Inflow schedule on fig3_ss for phases 0..n-1; the last phase's rates are
// kept forever.
PhaseSchedule nonconvergent_schedule(unsigned n_phases);
FlowOverTime build_nonconvergent_flow(unsigned n_phases);

struct Fig2Equilibria {
  FlowOverTime flow_f;  // everything on the tolled edge
  FlowOverTime flow_g;  // everything on the delayed edge
  PwlFunction label_f;  // c_s = 2 + theta
  PwlFunction label_g;  // c_s = 1 + theta
};

Fig2Equilibria fig2_equilibria();
// Constant split 1/1 over the two s-v edges of fig2_mul.
FlowOverTime fig2_even_split();

struct ConvergenceRow {
  unsigned i = 0;
  Rational theta;
  Rational f1;
  Rational f2;
  Rational q1;  // q1(theta_i)
  Rational q3;  // q3(1 + theta_i)
};

std::vector<ConvergenceRow> convergence_table(unsigned n);
// Header i,theta,f1,f2,q1,q3,theta_dec,... with 20-digit decimals.
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace tollflow
