#include "tollflow/pwl.hpp"

#include "tollflow/error.hpp"

namespace tollflow {

namespace {

void check_time(const Rational& t) {
  if (t.sign() < 0) throw Error(ErrorKind::NegativeTime, "time " + t.str() + " is negative");
}

void check_breakpoints(const std::vector<Rational>& breakpoints, std::size_t value_count) {
  if (breakpoints.empty() || breakpoints.size() != value_count) {
    throw Error(ErrorKind::InvalidArgument, "breakpoints and values must be nonempty and of equal length");
  }
  if (!breakpoints.front().is_zero()) throw Error(ErrorKind::InvalidArgument, "first breakpoint must be 0");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) {
      throw Error(ErrorKind::InvalidArgument, "breakpoints must be strictly increasing");
    }
  }
}

std::size_t locate(const std::vector<Rational>& breakpoints, const Rational& t) {
  check_time(t);
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  return static_cast<std::size_t>(it - breakpoints.begin()) - 1;
}

template <typename Op>
StepFunction combine(const StepFunction& a, const StepFunction& b, Op op) {
  std::vector<Rational> grid = a.breakpoints();
  grid.insert(grid.end(), b.breakpoints().begin(), b.breakpoints().end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<Rational> values;
  values.reserve(grid.size());
  std::size_t ia = 0, ib = 0;
  for (const Rational& t : grid) {
    while (ia + 1 < a.breakpoints().size() && a.breakpoints()[ia + 1] <= t) ++ia;
    while (ib + 1 < b.breakpoints().size() && b.breakpoints()[ib + 1] <= t) ++ib;
    values.push_back(op(a.values()[ia], b.values()[ib]));
  }
  return StepFunction(std::move(grid), std::move(values));
}

}  // namespace

StepFunction::StepFunction() : breakpoints_{Rational(0)}, values_{Rational(0)} {}

StepFunction::StepFunction(std::vector<Rational> breakpoints, std::vector<Rational> values) {
  check_breakpoints(breakpoints, values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values_.empty() && values_.back() == values[i]) continue;
    breakpoints_.push_back(std::move(breakpoints[i]));
    values_.push_back(std::move(values[i]));
  }
}

StepFunction StepFunction::constant(const Rational& value) { return StepFunction({Rational(0)}, {value}); }

std::optional<Rational> StepFunction::piece_end(std::size_t i) const {
  if (i + 1 < breakpoints_.size()) return breakpoints_[i + 1];
  return std::nullopt;
}

std::size_t StepFunction::piece_index(const Rational& t) const { return locate(breakpoints_, t); }

Rational StepFunction::value_at(const Rational& t) const { return values_[piece_index(t)]; }

StepFunction StepFunction::delayed(const Rational& delay) const {
  if (delay.sign() < 0) throw Error(ErrorKind::InvalidArgument, "negative delay");
  if (delay.is_zero()) return *this;
  std::vector<Rational> bps{Rational(0)};
  std::vector<Rational> vals{Rational(0)};
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    bps.push_back(breakpoints_[i] + delay);
    vals.push_back(values_[i]);
  }
  return StepFunction(std::move(bps), std::move(vals));
}

StepFunction StepFunction::scaled(const Rational& factor) const {
  std::vector<Rational> vals;
  vals.reserve(values_.size());
  for (const auto& v : values_) vals.push_back(v * factor);
  return StepFunction(breakpoints_, std::move(vals));
}

StepFunction operator+(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](const Rational& x, const Rational& y) { return x + y; });
}

StepFunction operator-(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](const Rational& x, const Rational& y) { return x - y; });
}

PwlFunction::PwlFunction() : breakpoints_{Rational(0)}, values_{Rational(0)}, final_slope_(0) {}

PwlFunction::PwlFunction(std::vector<Rational> breakpoints, std::vector<Rational> values, Rational final_slope)
    : final_slope_(std::move(final_slope)) {
  check_breakpoints(breakpoints, values.size());
  auto slope = [&](std::size_t i) {
    if (i + 1 < breakpoints.size()) return (values[i + 1] - values[i]) / (breakpoints[i + 1] - breakpoints[i]);
    return final_slope_;
  };
  breakpoints_.push_back(breakpoints[0]);
  values_.push_back(values[0]);
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (slope(i - 1) == slope(i)) continue;
    breakpoints_.push_back(breakpoints[i]);
    values_.push_back(values[i]);
  }
}

PwlFunction PwlFunction::linear(const Rational& intercept, const Rational& slope) {
  return PwlFunction({Rational(0)}, {intercept}, slope);
}

std::size_t PwlFunction::piece_index(const Rational& t) const { return locate(breakpoints_, t); }

Rational PwlFunction::piece_slope(std::size_t i) const {
  if (i + 1 < breakpoints_.size()) {
    return (values_[i + 1] - values_[i]) / (breakpoints_[i + 1] - breakpoints_[i]);
  }
  return final_slope_;
}

Rational PwlFunction::value_at(const Rational& t) const {
  const std::size_t i = piece_index(t);
  return values_[i] + piece_slope(i) * (t - breakpoints_[i]);
}

Rational PwlFunction::slope_at(const Rational& t) const { return piece_slope(piece_index(t)); }

PwlFunction PwlFunction::scaled(const Rational& factor) const {
  std::vector<Rational> vals;
  vals.reserve(values_.size());
  for (const auto& v : values_) vals.push_back(v * factor);
  return PwlFunction(breakpoints_, std::move(vals), final_slope_ * factor);
}

Rational step_eval(const StepFunction& f, const Rational& t) { return f.value_at(t); }

Rational pwl_eval(const PwlFunction& g, const Rational& t) { return g.value_at(t); }

PwlFunction step_integrate(const StepFunction& f) {
  std::vector<Rational> values{Rational(0)};
  const auto& bps = f.breakpoints();
  for (std::size_t i = 1; i < bps.size(); ++i) {
    values.push_back(values.back() + f.values()[i - 1] * (bps[i] - bps[i - 1]));
  }
  return PwlFunction(bps, std::move(values), f.final_value());
}

std::vector<Rational> breakpoint_union(std::span<const std::vector<Rational>> lists) {
  std::vector<Rational> all;
  for (const auto& list : lists) all.insert(all.end(), list.begin(), list.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace tollflow
