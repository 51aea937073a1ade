#include "tollflow/simplex.hpp"

#include <optional>

#include "tollflow/error.hpp"

namespace tollflow::lp {

std::size_t LinearProgram::add_variable(Rational objective_coefficient) {
  objective_.push_back(std::move(objective_coefficient));
  return objective_.size() - 1;
}

void LinearProgram::add_constraint(std::vector<Term> terms, Relation relation, Rational rhs) {
  for (const auto& t : terms) {
    if (t.variable >= objective_.size()) throw Error(ErrorKind::InvalidArgument, "constraint uses unknown variable");
  }
  constraints_.push_back({std::move(terms), relation, std::move(rhs)});
}

void LinearProgram::set_objective(std::size_t variable, Rational coefficient) {
  objective_.at(variable) = std::move(coefficient);
}

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols), basis_(rows, 0) {}

  Rational& at(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = Rational(1) / at(row, col);
    for (std::size_t c = 0; c < cols_; ++c) at(row, c) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || at(r, col).is_zero()) continue;
      const Rational factor = at(r, col);
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!at(row, c).is_zero()) at(r, c) -= factor * at(row, c);
      }
    }
    basis_[row] = col;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> cells_;
  std::vector<std::size_t> basis_;
};

// Rows 0..m-1 are constraints, row m is the objective row holding reduced
// costs (we minimize: entering column has negative entry). Column cols-1 is
// the rhs. Only columns < `allowed` may enter.
bool run_simplex(Tableau& t, std::size_t allowed) {
  const std::size_t m = t.rows() - 1;
  const std::size_t rhs = t.cols() - 1;
  while (true) {
    std::optional<std::size_t> enter;
    for (std::size_t c = 0; c < allowed; ++c) {
      if (t.at(m, c).sign() < 0) {
        enter = c;
        break;
      }
    }
    if (!enter) return true;
    std::optional<std::size_t> leave;
    Rational best_ratio;
    for (std::size_t r = 0; r < m; ++r) {
      if (t.at(r, *enter).sign() <= 0) continue;
      Rational ratio = t.at(r, rhs) / t.at(r, *enter);
      if (!leave || ratio < best_ratio || (ratio == best_ratio && t.basis()[r] < t.basis()[*leave])) {
        leave = r;
        best_ratio = std::move(ratio);
      }
    }
    if (!leave) return false;
    t.pivot(*leave, *enter);
  }
}

}  // namespace

Solution solve(const LinearProgram& program) {
  const std::size_t n = program.variable_count();
  const auto& cons = program.constraints();
  const std::size_t m = cons.size();

  // Column layout: structural | slack/surplus | artificial | rhs.
  std::size_t slack_count = 0;
  for (const auto& c : cons) {
    if (c.relation != Relation::Equal) ++slack_count;
  }
  const std::size_t art_begin = n + slack_count;
  const std::size_t cols = art_begin + m + 1;
  const std::size_t rhs = cols - 1;
  Tableau t(m + 1, cols);

  std::size_t slack = n;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = cons[r];
    const bool flip = c.rhs.sign() < 0;
    const Rational sign = flip ? Rational(-1) : Rational(1);
    for (const auto& term : c.terms) t.at(r, term.variable) += sign * term.coefficient;
    if (c.relation == Relation::LessEqual) t.at(r, slack++) = sign;
    if (c.relation == Relation::GreaterEqual) t.at(r, slack++) = -sign;
    t.at(r, art_begin + r) = Rational(1);
    t.at(r, rhs) = sign * c.rhs;
    t.basis()[r] = art_begin + r;
  }

  // Phase 1: minimize the sum of artificials.
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < art_begin; ++c) t.at(m, c) -= t.at(r, c);
    t.at(m, rhs) -= t.at(r, rhs);
  }
  run_simplex(t, art_begin);
  Solution sol;
  if (t.at(m, rhs).sign() != 0) {
    sol.status = Status::Infeasible;
    return sol;
  }
  // Drive remaining artificials out of the basis; rows where that is
  // impossible are redundant and stay at zero.
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis()[r] < art_begin) continue;
    for (std::size_t c = 0; c < art_begin; ++c) {
      if (!t.at(r, c).is_zero()) {
        t.pivot(r, c);
        break;
      }
    }
  }

  // Phase 2: minimize -objective.
  for (std::size_t c = 0; c < cols; ++c) t.at(m, c) = Rational(0);
  for (std::size_t j = 0; j < n; ++j) t.at(m, j) = -program.objective()[j];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b = t.basis()[r];
    if (b >= art_begin || t.at(m, b).is_zero()) continue;
    const Rational factor = t.at(m, b);
    for (std::size_t c = 0; c < cols; ++c) t.at(m, c) -= factor * t.at(r, c);
  }
  // Artificials stuck in the basis sit on redundant rows (all-zero outside
  // artificial columns), so excluding them from entering is enough.
  if (!run_simplex(t, art_begin)) {
    sol.status = Status::Unbounded;
    return sol;
  }
  sol.status = Status::Optimal;
  sol.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis()[r] < n) sol.x[t.basis()[r]] = t.at(r, rhs);
  }
  sol.objective = Rational(0);
  for (std::size_t j = 0; j < n; ++j) sol.objective += program.objective()[j] * sol.x[j];
  return sol;
}

}  // namespace tollflow::lp
