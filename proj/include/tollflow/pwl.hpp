#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "tollflow/rational.hpp"

namespace tollflow {

// Right-continuous piecewise-constant function on [0, inf). values[i] holds on
// [breakpoints[i], breakpoints[i+1]); the last value holds forever.
// Canonical: adjacent values differ, so == is pointwise equality.
class StepFunction {
 public:
  StepFunction();  // identically zero
  StepFunction(std::vector<Rational> breakpoints, std::vector<Rational> values);
  static StepFunction constant(const Rational& value);

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t piece_count() const { return values_.size(); }
  // End of piece i, nullopt for the final unbounded piece.
  std::optional<Rational> piece_end(std::size_t i) const;
  std::size_t piece_index(const Rational& t) const;

  Rational value_at(const Rational& t) const;
  const Rational& final_value() const { return values_.back(); }

  // 0 on [0, delay), then this function shifted right by `delay`.
  StepFunction delayed(const Rational& delay) const;
  StepFunction scaled(const Rational& factor) const;

  friend StepFunction operator+(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator-(const StepFunction& a, const StepFunction& b);
  friend bool operator==(const StepFunction& a, const StepFunction& b) = default;

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Rational> values_;
};

// Continuous piecewise-linear function on [0, inf), given by its values at
// the breakpoints plus the slope after the last breakpoint. Canonical: no
// interior breakpoint joins two collinear pieces.
class PwlFunction {
 public:
  PwlFunction();  // identically zero
  PwlFunction(std::vector<Rational> breakpoints, std::vector<Rational> values, Rational final_slope);
  static PwlFunction linear(const Rational& intercept, const Rational& slope);

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& final_slope() const { return final_slope_; }
  std::size_t piece_count() const { return values_.size(); }
  std::size_t piece_index(const Rational& t) const;
  Rational piece_slope(std::size_t i) const;

  Rational value_at(const Rational& t) const;
  // Right derivative at t.
  Rational slope_at(const Rational& t) const;

  PwlFunction scaled(const Rational& factor) const;

  friend bool operator==(const PwlFunction& a, const PwlFunction& b) = default;

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Rational> values_;
  Rational final_slope_;
};

Rational step_eval(const StepFunction& f, const Rational& t);
Rational pwl_eval(const PwlFunction& g, const Rational& t);
// G(t) = integral of f over [0, t].
PwlFunction step_integrate(const StepFunction& f);

// Sorted, deduplicated union of breakpoint lists.
std::vector<Rational> breakpoint_union(std::span<const std::vector<Rational>> lists);

template <typename Function>
std::vector<Rational> breakpoint_union(std::span<const Function> functions) {
  std::vector<Rational> all;
  for (const auto& f : functions) all.insert(all.end(), f.breakpoints().begin(), f.breakpoints().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace tollflow
