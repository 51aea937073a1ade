#include <vector>

#include "doctest.h"
#include "tollflow/error.hpp"
#include "tollflow/pwl.hpp"
#include "tollflow/trajectories.hpp"

using namespace tollflow;

namespace {
Rational R(long p, long q = 1) { return Rational(p, q); }
}  // namespace

TEST_CASE("step functions evaluate right-continuously") {
  CHECK(step_eval(StepFunction::constant(R(2)), R(7)) == R(2));
  const StepFunction jump({R(0), R(1)}, {R(3), R(5)});
  CHECK(jump.value_at(R(1, 2)) == R(3));
  CHECK(jump.value_at(R(1)) == R(5));
  CHECK(jump.value_at(R(100)) == R(5));
  CHECK_THROWS_AS(jump.value_at(R(-1)), Error);
  CHECK(StepFunction().value_at(R(4)) == R(0));

  const StepFunction phase0({R(0), theta(1)}, {nonconvergent_phase_rates(0).f1, nonconvergent_phase_rates(1).f1});
  CHECK(step_eval(phase0, R(0)) == R(3, 2));
}

TEST_CASE("step functions are canonical") {
  const StepFunction merged({R(0), R(1), R(2)}, {R(1), R(1), R(4)});
  CHECK(merged.breakpoints() == std::vector<Rational>{R(0), R(2)});
  CHECK(merged == StepFunction({R(0), R(2)}, {R(1), R(4)}));
  CHECK_THROWS_AS(StepFunction({R(1)}, {R(1)}), Error);
  CHECK_THROWS_AS(StepFunction({R(0), R(2), R(1)}, {R(1), R(2), R(3)}), Error);
  CHECK_THROWS_AS(StepFunction({R(0)}, {R(1), R(2)}), Error);
}

TEST_CASE("step algebra") {
  const StepFunction a({R(0), R(1)}, {R(1), R(2)});
  const StepFunction b({R(0), R(1, 2)}, {R(3), R(0)});
  const StepFunction sum = a + b;
  CHECK(sum == StepFunction({R(0), R(1, 2), R(1)}, {R(4), R(1), R(2)}));
  CHECK(a - a == StepFunction());
  CHECK(a.scaled(R(1, 2)) == StepFunction({R(0), R(1)}, {R(1, 2), R(1)}));
  const StepFunction late = a.delayed(R(2));
  CHECK(late == StepFunction({R(0), R(2), R(3)}, {R(0), R(1), R(2)}));
  CHECK(*a.piece_end(0) == R(1));
  CHECK_FALSE(a.piece_end(1).has_value());
}

TEST_CASE("integration") {
  CHECK(step_integrate(StepFunction::constant(R(2))) == PwlFunction::linear(R(0), R(2)));
  CHECK(step_integrate(StepFunction()) == PwlFunction());
  const StepFunction phases({R(0), R(2, 3)}, {R(3, 2), R(10, 9)});
  const PwlFunction g = step_integrate(phases);
  CHECK(g.value_at(R(2, 3)) == R(1));
  // derivative matches the step value piecewise
  const std::vector<Rational> pts{R(0), R(1, 3), R(2, 3), R(1), R(5)};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational slope = (g.value_at(pts[i + 1]) - g.value_at(pts[i])) / (pts[i + 1] - pts[i]);
    CHECK(slope == phases.value_at(pts[i]));
  }
}

TEST_CASE("piecewise linear evaluation") {
  CHECK(pwl_eval(PwlFunction::linear(R(0), R(2)), R(1, 2)) == R(1));
  const PwlFunction q({R(0), R(2, 3)}, {R(0), R(1, 3)}, R(1, 5));
  CHECK(q.value_at(R(1, 3)) == R(1, 6));
  CHECK(q.value_at(theta(1)) == R(1, 3));
  CHECK(q.value_at(R(2, 3) + R(5)) == R(1, 3) + R(1));
  CHECK(q.slope_at(R(0)) == R(1, 2));
  CHECK(q.slope_at(R(2, 3)) == R(1, 5));
  CHECK_THROWS_AS(q.value_at(R(-1, 2)), Error);
}

TEST_CASE("collinear breakpoints are removed") {
  const PwlFunction line({R(0), R(1), R(2)}, {R(1), R(2), R(3)}, R(1));
  CHECK(line.breakpoints().size() == 1);
  CHECK(line == PwlFunction::linear(R(1), R(1)));
  const PwlFunction kink({R(0), R(1)}, {R(0), R(1)}, R(0));
  CHECK(kink.breakpoints().size() == 2);
  CHECK(kink.scaled(R(2)).value_at(R(3)) == R(2));
}

TEST_CASE("breakpoint union") {
  const StepFunction a({R(0), R(1)}, {R(1), R(2)});
  const StepFunction b({R(0), R(2, 3)}, {R(1), R(2)});
  const std::vector<StepFunction> both{a, b};
  CHECK(breakpoint_union<StepFunction>(both) == std::vector<Rational>{R(0), R(2, 3), R(1)});
  const std::vector<StepFunction> one{StepFunction::constant(R(3))};
  CHECK(breakpoint_union<StepFunction>(one) == std::vector<Rational>{R(0)});
  const std::vector<std::vector<Rational>> lists{{theta(0), theta(1)}, {theta(2), theta(1)}};
  CHECK(breakpoint_union(lists) == std::vector<Rational>{R(0), R(2, 3), R(11, 9)});
}
