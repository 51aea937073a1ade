#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tollflow/rational.hpp"

namespace tollflow::mcf {

struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
  Rational capacity;
  Rational cost;  // >= 0
};

struct Result {
  std::vector<Rational> flow;       // per arc
  std::vector<Rational> potential;  // per node; reduced costs are >= 0 on residual arcs
  Rational cost;
};

// Min-cost flow with node supplies (sum zero) by successive shortest paths.
// Returns nullopt when the supplies cannot be routed.
std::optional<Result> solve(std::size_t nodes, const std::vector<Arc>& arcs, const std::vector<Rational>& supply);

}  // namespace tollflow::mcf
