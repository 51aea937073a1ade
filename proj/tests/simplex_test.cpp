#include "doctest.h"
#include "tollflow/simplex.hpp"

using namespace tollflow;
using namespace tollflow::lp;

namespace {
Rational R(long p, long q = 1) { return Rational(p, q); }
}  // namespace

TEST_CASE("textbook maximum") {
  LinearProgram p;
  const auto x = p.add_variable(R(3)), y = p.add_variable(R(2));
  p.add_constraint({{x, R(1)}, {y, R(1)}}, Relation::LessEqual, R(4));
  p.add_constraint({{x, R(1)}, {y, R(3)}}, Relation::LessEqual, R(6));
  p.add_constraint({{x, R(1)}}, Relation::LessEqual, R(3));
  const Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.x[x] == R(3));
  CHECK(s.x[y] == R(1));
  CHECK(s.objective == R(11));
}

TEST_CASE("equalities, lower bounds and negative right-hand sides") {
  LinearProgram p;
  const auto x = p.add_variable(R(-1)), y = p.add_variable(R(-1));
  p.add_constraint({{x, R(1)}, {y, R(2)}}, Relation::Equal, R(3));
  p.add_constraint({{x, R(-1)}}, Relation::LessEqual, R(-1, 2));  // x >= 1/2
  const Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.x[x] == R(1, 2));
  CHECK(s.x[y] == R(5, 4));
  CHECK(s.objective == R(-7, 4));
}

TEST_CASE("infeasible and unbounded") {
  LinearProgram bad;
  const auto x = bad.add_variable(R(1));
  bad.add_constraint({{x, R(1)}}, Relation::GreaterEqual, R(2));
  bad.add_constraint({{x, R(1)}}, Relation::LessEqual, R(1));
  CHECK(solve(bad).status == Status::Infeasible);

  LinearProgram open;
  const auto a = open.add_variable(R(1)), b = open.add_variable();
  open.add_constraint({{a, R(1)}, {b, R(-1)}}, Relation::LessEqual, R(1));
  CHECK(solve(open).status == Status::Unbounded);
}

TEST_CASE("degenerate cycling example terminates") {
  // Beale's example, stated as a maximization.
  LinearProgram p;
  const auto x4 = p.add_variable(R(3, 4)), x5 = p.add_variable(R(-150)), x6 = p.add_variable(R(1, 50)),
             x7 = p.add_variable(R(-6));
  p.add_constraint({{x4, R(1, 4)}, {x5, R(-60)}, {x6, R(-1, 25)}, {x7, R(9)}}, Relation::LessEqual, R(0));
  p.add_constraint({{x4, R(1, 2)}, {x5, R(-90)}, {x6, R(-1, 50)}, {x7, R(3)}}, Relation::LessEqual, R(0));
  p.add_constraint({{x6, R(1)}}, Relation::LessEqual, R(1));
  const Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective == R(1, 20));
  CHECK(s.x[x4] == R(1, 25));
  CHECK(s.x[x6] == R(1));
}

TEST_CASE("redundant equalities") {
  LinearProgram p;
  const auto x = p.add_variable(R(1)), y = p.add_variable();
  p.add_constraint({{x, R(1)}, {y, R(1)}}, Relation::Equal, R(2));
  p.add_constraint({{x, R(2)}, {y, R(2)}}, Relation::Equal, R(4));
  const Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective == R(2));
}
