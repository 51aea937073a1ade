#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "tollflow/error.hpp"
#include "tollflow/steady.hpp"
#include "tollflow/trajectories.hpp"

using namespace tollflow;

namespace {
Rational R(long p, long q = 1) { return Rational(p, q); }
}  // namespace

TEST_CASE("built-in parameters") {
  const Instance fig3 = builtin_instance("fig3_ss");
  CHECK(fig3.inflow() == R(2));
  CHECK(fig3.edge(0).toll == R(1));
  CHECK(fig3.edge(1).transit == R(1));
  const Instance fig5 = builtin_instance("fig5_deficit");
  CHECK(fig5.edge(1).transit == R(2));
  CHECK(fig5.edge(0).capacity == R(2));
  const Instance fig1 = builtin_instance("fig1_tf");
  CHECK(fig1.edge(2).capacity == R(1, 4));
  CHECK(fig1.inflow() == R(1));
}

TEST_CASE("theta and phase rates") {
  CHECK(theta(0) == R(0));
  CHECK(theta(1) == R(2, 3));
  CHECK(theta(2) == R(11, 9));
  for (unsigned i = 0; i < 15; ++i) CHECK(theta(i) < theta(i + 1));

  CHECK(nonconvergent_phase_rates(0).f1 == R(3, 2));
  CHECK(nonconvergent_phase_rates(0).f2 == R(1, 2));
  CHECK(nonconvergent_phase_rates(1).f1 == R(6, 5));
  CHECK(nonconvergent_phase_rates(1).f2 == R(4, 5));
  for (unsigned i = 0; i < 15; ++i) {
    CHECK(nonconvergent_phase_rates(i + 1).f1 < nonconvergent_phase_rates(i).f1);
    CHECK(nonconvergent_phase_rates(i).f1 > R(1));
    CHECK(nonconvergent_phase_rates(i).f1 + nonconvergent_phase_rates(i).f2 == R(2));
  }
}

TEST_CASE("queue closed forms") {
  CHECK(closed_form_queue(QueueFormula::Q1AtTheta, 0) == R(0));
  CHECK(closed_form_queue(QueueFormula::Q1AtTheta, 1) == R(1, 3));
  CHECK(closed_form_queue(QueueFormula::Q3AtOnePlusTheta, 1) == R(1, 3));
  CHECK(closed_form_queue(QueueFormula::Q3AtOnePlusTheta, 0) == R(0));
  for (unsigned i = 0; i <= 10; ++i) {
    CAPTURE(i);
    CHECK(summed_queue(QueueFormula::Q1AtTheta, i) == closed_form_queue(QueueFormula::Q1AtTheta, i));
    CHECK(summed_queue(QueueFormula::Q3AtOnePlusTheta, i) == closed_form_queue(QueueFormula::Q3AtOnePlusTheta, i));
  }
}

TEST_CASE("phase schedule") {
  const PhaseSchedule schedule = nonconvergent_schedule(4);
  REQUIRE_FALSE(schedule.phases.empty());
  CHECK(schedule.phases.front().start == R(0));
  CHECK_FALSE(schedule.phases.back().end.has_value());
  for (std::size_t k = 0; k + 1 < schedule.phases.size(); ++k) {
    CHECK(schedule.phases[k].start < schedule.phases[k + 1].start);
    CHECK(*schedule.phases[k].end == schedule.phases[k + 1].start);
  }
  CHECK_THROWS_AS(nonconvergent_schedule(0), Error);

  const FlowOverTime one = build_nonconvergent_flow(1);
  CHECK(one.edge_state(0).inflow == StepFunction::constant(R(3, 2)));
  CHECK(one.edge_state(1).inflow == StepFunction::constant(R(1, 2)));
  CHECK(one.edge_state(2).inflow == StepFunction({R(0), R(1)}, {R(1), R(3, 2)}));
}

TEST_CASE("propagated queues match the closed forms") {
  const FlowOverTime six = build_nonconvergent_flow(6);
  CHECK(six.edge_state(0).queue.value_at(theta(5)) == R(121, 243));

  const unsigned n = 12;
  const FlowOverTime flow = build_nonconvergent_flow(n);
  for (unsigned i = 0; i < n; ++i) {
    CAPTURE(i);
    CHECK(flow.edge_state(0).queue.value_at(theta(i)) == closed_form_queue(QueueFormula::Q1AtTheta, i));
    CHECK(flow.edge_state(2).queue.value_at(R(1) + theta(i)) ==
          closed_form_queue(QueueFormula::Q3AtOnePlusTheta, i));
    if (i > 0) CHECK(exit_time(flow.edge_state(0), theta(i)) == R(1) + theta(i - 1));
  }
  for (unsigned i = 0; i + 1 < n; ++i) {
    CHECK(flow.edge_state(0).queue.slope_at(theta(i)) != flow.edge_state(0).queue.slope_at(theta(i + 1)));
  }
  CHECK(check_conservation(flow).ok);
  CHECK(check_equilibrium(flow, theta(n - 1)).ok);
}

TEST_CASE("trajectory approaches the LP steady state") {
  const SteadyStateSolution steady = compute_steady_state(builtin_instance("fig3_ss"));
  for (unsigned i = 0; i < 12; ++i) {
    const Rational gap = nonconvergent_phase_rates(i).f1 - steady.inflow[0];
    CHECK(gap == R(2) / (pow_int(R(3), i + 1) + R(1)));
    CHECK(steady.initial_queue[0] - closed_form_queue(QueueFormula::Q1AtTheta, i) ==
          R(1) / (R(2) * pow_int(R(3), i)));
  }
}

TEST_CASE("fig2 equilibria") {
  const Fig2Equilibria eq = fig2_equilibria();
  const VertexIndex s = eq.flow_f.instance().source();
  CHECK(cost_to_sink(eq.flow_f, s, R(0)) == R(2));
  CHECK(cost_to_sink(eq.flow_g, s, R(0)) == R(1));
  for (const Rational& t : {R(0), R(1, 2), R(1), R(3), R(9, 2)}) {
    CHECK(cost_to_sink(eq.flow_f, s, t) == eq.label_f.value_at(t));
    CHECK(cost_to_sink(eq.flow_g, s, t) == eq.label_g.value_at(t));
    CHECK(eq.label_f.value_at(t) - eq.label_g.value_at(t) == R(1));
  }
  CHECK(check_equilibrium(eq.flow_f, R(5)).ok);
  CHECK(check_equilibrium(eq.flow_g, R(5)).ok);
  CHECK_FALSE(check_equilibrium(fig2_even_split(), R(5)).ok);
  CHECK(check_conservation(fig2_even_split()).ok);
}

TEST_CASE("convergence table") {
  const auto rows = convergence_table(12);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0].theta == R(0));
  CHECK(rows[0].f1 == R(3, 2));
  CHECK(rows[0].q3 == R(0));
  CHECK(rows[1].theta == R(2, 3));
  CHECK(rows[1].f2 == R(4, 5));
  CHECK(rows[1].q1 == R(1, 3));
  CHECK(rows[1].q3 == R(1, 3));
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) CHECK(rows[i].theta < rows[i + 1].theta);
  CHECK(rows[11].f1 - R(1) == R(2) / (pow_int(R(3), 12) + R(1)));

  const std::string csv = convergence_csv(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "i,theta,f1,f2,q1,q3,theta_dec,f1_dec,f2_dec,q1_dec,q3_dec");
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 12);
  CHECK(lines[0] == "0,0,3/2,1/2,0,0,0,1.5,0.5,0,0");
  const std::string last = lines.back();
  std::vector<std::string> cells;
  std::stringstream cs(last);
  for (std::string cell; std::getline(cs, cell, ',');) cells.push_back(cell);
  REQUIRE(cells.size() == 11);
  CHECK(cells[2] == "265722/265721");
  CHECK(std::fabs(std::stod(cells[7]) - 1.0) < 1e-4);

  CHECK(convergence_table(1).size() == 1);
  CHECK_THROWS_AS(convergence_table(0), Error);
}
