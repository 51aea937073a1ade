#include "min_cost_flow.hpp"

#include <limits>

#include "tollflow/error.hpp"

namespace tollflow::mcf {

namespace {

struct Residual {
  std::size_t from;
  std::size_t to;
  Rational cost;
  std::size_t arc;
  bool forward;
};

// Residual arcs over the original nodes.
std::vector<Residual> residual_arcs(const std::vector<Arc>& arcs, const std::vector<Rational>& flow) {
  std::vector<Residual> out;
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (flow[a] < arcs[a].capacity) out.push_back({arcs[a].from, arcs[a].to, arcs[a].cost, a, true});
    if (flow[a].sign() > 0) out.push_back({arcs[a].to, arcs[a].from, -arcs[a].cost, a, false});
  }
  return out;
}

struct Paths {
  std::vector<std::optional<Rational>> dist;
  std::vector<std::optional<std::size_t>> via;  // index into the residual list
};

// Bellman-Ford from every node in `roots` at distance 0.
Paths bellman_ford(std::size_t nodes, const std::vector<Residual>& residual, const std::vector<bool>& roots) {
  Paths p{std::vector<std::optional<Rational>>(nodes), std::vector<std::optional<std::size_t>>(nodes)};
  for (std::size_t v = 0; v < nodes; ++v) {
    if (roots[v]) p.dist[v] = Rational(0);
  }
  for (std::size_t round = 0; round <= nodes; ++round) {
    bool changed = false;
    for (std::size_t r = 0; r < residual.size(); ++r) {
      const Residual& arc = residual[r];
      if (!p.dist[arc.from]) continue;
      Rational candidate = *p.dist[arc.from] + arc.cost;
      if (!p.dist[arc.to] || candidate < *p.dist[arc.to]) {
        p.dist[arc.to] = std::move(candidate);
        p.via[arc.to] = r;
        changed = true;
      }
    }
    if (!changed) return p;
  }
  throw Error(ErrorKind::UnboundedDual, "negative residual cycle in min-cost flow");
}

}  // namespace

std::optional<Result> solve(std::size_t nodes, const std::vector<Arc>& arcs, const std::vector<Rational>& supply) {
  std::vector<Rational> flow(arcs.size(), Rational(0));
  std::vector<Rational> excess = supply;

  for (;;) {
    std::vector<bool> roots(nodes, false);
    bool any = false;
    for (std::size_t v = 0; v < nodes; ++v) {
      if (excess[v].sign() > 0) roots[v] = any = true;
    }
    if (!any) break;
    const auto residual = residual_arcs(arcs, flow);
    const Paths paths = bellman_ford(nodes, residual, roots);
    // Nearest deficit node, lowest index on ties.
    std::optional<std::size_t> target;
    for (std::size_t v = 0; v < nodes; ++v) {
      if (excess[v].sign() < 0 && paths.dist[v] && (!target || *paths.dist[v] < *paths.dist[*target])) target = v;
    }
    if (!target) return std::nullopt;

    std::vector<std::size_t> path;
    std::size_t v = *target;
    while (paths.via[v]) {
      const std::size_t r = *paths.via[v];
      path.push_back(r);
      v = residual[r].from;
    }
    Rational amount = min(excess[v], -excess[*target]);
    for (std::size_t r : path) {
      const Residual& arc = residual[r];
      amount = min(amount, arc.forward ? arcs[arc.arc].capacity - flow[arc.arc] : flow[arc.arc]);
    }
    for (std::size_t r : path) {
      const Residual& arc = residual[r];
      if (arc.forward) {
        flow[arc.arc] += amount;
      } else {
        flow[arc.arc] -= amount;
      }
    }
    excess[v] -= amount;
    excess[*target] += amount;
  }

  Result result;
  result.cost = Rational(0);
  for (std::size_t a = 0; a < arcs.size(); ++a) result.cost += arcs[a].cost * flow[a];
  const Paths final_paths = bellman_ford(nodes, residual_arcs(arcs, flow), std::vector<bool>(nodes, true));
  for (std::size_t v = 0; v < nodes; ++v) result.potential.push_back(*final_paths.dist[v]);
  result.flow = std::move(flow);
  return result;
}

}  // namespace tollflow::mcf
