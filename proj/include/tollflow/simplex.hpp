#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tollflow/rational.hpp"

namespace tollflow::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Status { Optimal, Infeasible, Unbounded };

struct Term {
  std::size_t variable;
  Rational coefficient;
};

struct Constraint {
  std::vector<Term> terms;
  Relation relation;
  Rational rhs;
};

// maximize objective . x  subject to constraints, x >= 0.
class LinearProgram {
 public:
  std::size_t add_variable(Rational objective_coefficient = Rational(0));
  void add_constraint(std::vector<Term> terms, Relation relation, Rational rhs);
  void set_objective(std::size_t variable, Rational coefficient);

  std::size_t variable_count() const { return objective_.size(); }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Rational>& objective() const { return objective_; }

 private:
  std::vector<Rational> objective_;
  std::vector<Constraint> constraints_;
};

struct Solution {
  Status status = Status::Infeasible;
  std::vector<Rational> x;
  Rational objective;
};

// Two-phase dense tableau simplex over exact rationals with Bland's rule,
// so it terminates on degenerate problems.
Solution solve(const LinearProgram& program);

}  // namespace tollflow::lp
