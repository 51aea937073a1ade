#include "tollflow/thin_flow.hpp"

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>

#include "tollflow/error.hpp"
#include "tollflow/simplex.hpp"

namespace tollflow {

void VerificationReport::add(std::string condition, std::string subject, std::string detail) {
  ok = false;
  violations.push_back({std::move(condition), std::move(subject), std::move(detail)});
}

ThinFlowOptions thin_flow_options_from_env() {
  ThinFlowOptions options;
  if (const char* env = std::getenv("TOLLFLOW_SIZE_LIMIT"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0') {
      throw Error(ErrorKind::InvalidArgument, std::string("TOLLFLOW_SIZE_LIMIT is not an integer: ") + env);
    }
    options.max_edges = value;
  }
  return options;
}

std::vector<Rational> net_outflow(const Instance& inst, const std::vector<Rational>& flow) {
  std::vector<Rational> net(inst.vertex_count(), Rational(0));
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    net[inst.edge(e).tail] += flow[e];
    net[inst.edge(e).head] -= flow[e];
  }
  return net;
}

std::vector<bool> flow_carrying_vertices(const Instance& inst, const std::vector<Rational>& y) {
  std::vector<bool> carrying(inst.vertex_count(), false);
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    if (y[e].sign() > 0) {
      carrying[inst.edge(e).tail] = true;
      carrying[inst.edge(e).head] = true;
    }
  }
  return carrying;
}

namespace {

void check_st_flow(const Instance& inst, const std::vector<Rational>& flow, const std::string& condition,
                   VerificationReport& report) {
  const auto net = net_outflow(inst, flow);
  for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
    Rational expected(0);
    if (v == inst.source()) expected = inst.inflow();
    if (v == inst.sink()) expected = -inst.inflow();
    if (net[v] != expected) {
      report.add(condition, inst.vertex_name(v),
                 "net outflow " + net[v].str() + ", expected " + expected.str());
    }
  }
}

struct Affine {
  std::vector<lp::Term> terms;
  Rational constant;
};

// Level-structured search for a thin flow. Vertices are placed into levels
// of equal lambda, lowest first; a level assignment fixes every edge's class
// and hence its flow rule (E^>: y = lambda_w nu, E^=: 0 <= y <= lambda_w nu,
// E^<: y = 0). A relaxed LP over the placed vertices prunes each prefix.
class LevelSearch {
 public:
  explicit LevelSearch(const Instance& inst) : inst_(inst), level_(inst.vertex_count(), -1) {}

  std::optional<SourceThinFlow> run() {
    const std::size_t n = inst_.vertex_count();
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    const std::uint64_t others = all & ~bit(inst_.source());
    // Level 0 = {s} plus any subset of the other vertices.
    for (std::uint64_t sub = 0;; sub = (sub - others) & others) {
      if (place(sub | bit(inst_.source()), all)) {
        if (auto found = descend((all & ~(sub | bit(inst_.source()))))) return found;
        unplace(sub | bit(inst_.source()));
      }
      if (sub == others) break;
    }
    return std::nullopt;
  }

 private:
  static std::uint64_t bit(VertexIndex v) { return std::uint64_t{1} << v; }

  std::optional<SourceThinFlow> descend(std::uint64_t remaining) {
    if (remaining == 0) return leaf();
    for (std::uint64_t sub = remaining & (~remaining + 1);; sub = (sub - remaining) & remaining) {
      if (sub == 0) break;
      if (place(sub, remaining)) {
        if (auto found = descend(remaining & ~sub)) return found;
        unplace(sub);
      }
      if (sub == remaining) break;
    }
    return std::nullopt;
  }

  // Assigns `group` as the next level if structurally admissible and the
  // relaxed LP stays feasible; `available` is the unplaced set before.
  bool place(std::uint64_t group, std::uint64_t available) {
    const VertexIndex t = inst_.sink();
    if ((group & bit(t)) && group != available) return false;  // t sits in the top level
    const int level = levels_;
    for (VertexIndex v = 0; v < inst_.vertex_count(); ++v) {
      if (group & bit(v)) level_[v] = level;
    }
    ++levels_;
    bool ok = admissible(group) && relaxation_feasible(group == available);
    if (!ok) unplace(group);
    return ok;
  }

  void unplace(std::uint64_t group) {
    for (VertexIndex v = 0; v < inst_.vertex_count(); ++v) {
      if (group & bit(v)) level_[v] = -1;
    }
    --levels_;
  }

  // s-TF2 needs every w != s to have an in-edge from a level <= its own.
  bool admissible(std::uint64_t group) const {
    for (VertexIndex w = 0; w < inst_.vertex_count(); ++w) {
      if (!(group & bit(w)) || w == inst_.source()) continue;
      bool has = false;
      for (EdgeIndex e : inst_.in_edges(w)) {
        const int lv = level_[inst_.edge(e).tail];
        if (lv >= 0 && lv <= level_[w]) has = true;
      }
      if (!has) return false;
    }
    return true;
  }

  struct Model {
    lp::LinearProgram program;
    std::vector<std::size_t> level_var;  // index 0 unused (lambda = 1)
    std::vector<std::optional<std::size_t>> free_vertex_var;
    std::vector<std::optional<std::size_t>> edge_var;
    std::size_t eps = 0;
  };

  Affine lambda_of_level(const Model& m, int level) const {
    if (level == 0) return {{}, Rational(1)};
    return {{{m.level_var[static_cast<std::size_t>(level)], Rational(1)}}, Rational(0)};
  }

  Affine lambda_of_vertex(const Model& m, VertexIndex v) const {
    if (level_[v] >= 0) return lambda_of_level(m, level_[v]);
    return {{{*m.free_vertex_var[v], Rational(1)}}, Rational(0)};
  }

  // y_e as an affine expression; nullopt when neither endpoint is placed.
  std::optional<Affine> edge_flow(const Model& m, EdgeIndex e) const {
    const Edge& edge = inst_.edge(e);
    const int a = level_[edge.tail], b = level_[edge.head];
    if (a < 0 && b < 0) return std::nullopt;
    if (a < 0 || (b >= 0 && b < a)) return Affine{{}, Rational(0)};
    if (b < 0 || a < b) {
      Affine f = lambda_of_vertex(m, edge.head);
      for (auto& term : f.terms) term.coefficient *= edge.capacity;
      f.constant *= edge.capacity;
      return f;
    }
    return Affine{{{*m.edge_var[e], Rational(1)}}, Rational(0)};
  }

  Model build(bool complete) const {
    Model m;
    const std::size_t n = inst_.vertex_count();
    m.level_var.assign(static_cast<std::size_t>(levels_), 0);
    for (int j = 1; j < levels_; ++j) m.level_var[static_cast<std::size_t>(j)] = m.program.add_variable();
    m.free_vertex_var.assign(n, std::nullopt);
    for (VertexIndex v = 0; v < n; ++v) {
      if (level_[v] < 0) m.free_vertex_var[v] = m.program.add_variable();
    }
    m.eps = m.program.add_variable(Rational(1));
    m.edge_var.assign(inst_.edge_count(), std::nullopt);
    for (EdgeIndex e = 0; e < inst_.edge_count(); ++e) {
      const Edge& edge = inst_.edge(e);
      if (level_[edge.tail] >= 0 && level_[edge.tail] == level_[edge.head]) m.edge_var[e] = m.program.add_variable();
    }

    auto gap = [&](const Affine& hi, const Affine& lo) {
      // hi - lo - eps >= 0
      std::vector<lp::Term> terms = hi.terms;
      for (const auto& t : lo.terms) terms.push_back({t.variable, -t.coefficient});
      terms.push_back({m.eps, Rational(-1)});
      m.program.add_constraint(std::move(terms), lp::Relation::GreaterEqual, lo.constant - hi.constant);
    };
    for (int j = 1; j < levels_; ++j) gap(lambda_of_level(m, j), lambda_of_level(m, j - 1));
    for (VertexIndex v = 0; v < n; ++v) {
      if (m.free_vertex_var[v]) gap(lambda_of_vertex(m, v), lambda_of_level(m, levels_ - 1));
    }
    m.program.add_constraint({{m.eps, Rational(1)}}, lp::Relation::LessEqual, Rational(1));

    for (EdgeIndex e = 0; e < inst_.edge_count(); ++e) {
      if (!m.edge_var[e]) continue;
      const Edge& edge = inst_.edge(e);
      Affine cap = lambda_of_level(m, level_[edge.tail]);
      std::vector<lp::Term> terms{{*m.edge_var[e], Rational(1)}};
      for (const auto& t : cap.terms) terms.push_back({t.variable, -t.coefficient * edge.capacity});
      m.program.add_constraint(std::move(terms), lp::Relation::LessEqual, cap.constant * edge.capacity);
    }

    for (VertexIndex v = 0; v < n; ++v) {
      if (level_[v] < 0 || v == inst_.sink()) continue;
      std::vector<lp::Term> terms;
      Rational constant(0);
      auto accumulate = [&](EdgeIndex e, const Rational& sign) {
        auto f = edge_flow(m, e);
        for (const auto& t : f->terms) terms.push_back({t.variable, sign * t.coefficient});
        constant += sign * f->constant;
      };
      for (EdgeIndex e : inst_.out_edges(v)) accumulate(e, Rational(1));
      for (EdgeIndex e : inst_.in_edges(v)) accumulate(e, Rational(-1));
      const Rational demand = v == inst_.source() ? inst_.inflow() : Rational(0);
      m.program.add_constraint(std::move(terms), lp::Relation::Equal, demand - constant);
    }
    (void)complete;
    return m;
  }

  bool relaxation_feasible(bool complete) {
    Model m = build(complete);
    const lp::Solution sol = lp::solve(m.program);
    return sol.status == lp::Status::Optimal && sol.x[m.eps].sign() > 0;
  }

  std::optional<SourceThinFlow> leaf() {
    Model m = build(true);
    const lp::Solution sol = lp::solve(m.program);
    if (sol.status != lp::Status::Optimal || sol.x[m.eps].sign() <= 0) return std::nullopt;
    auto value = [&](const Affine& a) {
      Rational v = a.constant;
      for (const auto& t : a.terms) v += t.coefficient * sol.x[t.variable];
      return v;
    };
    SourceThinFlow tf;
    for (VertexIndex v = 0; v < inst_.vertex_count(); ++v) tf.lambda.push_back(value(lambda_of_vertex(m, v)));
    for (EdgeIndex e = 0; e < inst_.edge_count(); ++e) tf.y.push_back(value(*edge_flow(m, e)));
    if (!verify_source_thin_flow(inst_, tf.y, tf.lambda).ok) return std::nullopt;
    tf.flow_carrying = flow_carrying_vertices(inst_, tf.y);
    return tf;
  }

  const Instance& inst_;
  std::vector<int> level_;
  int levels_ = 0;
};

}  // namespace

SourceThinFlow solve_source_thin_flow(const Instance& inst, const ThinFlowOptions& options) {
  if (inst.edge_count() > options.max_edges) {
    throw Error(ErrorKind::SizeLimit, "instance has " + std::to_string(inst.edge_count()) +
                                          " edges; the thin-flow search is limited to " +
                                          std::to_string(options.max_edges));
  }
  if (inst.vertex_count() > 63) throw Error(ErrorKind::SizeLimit, "thin-flow search supports at most 63 vertices");
  LevelSearch search(inst);
  if (auto found = search.run()) return *found;
  throw Error(ErrorKind::SearchExhausted, "no level structure yields a thin flow");
}

VerificationReport verify_source_thin_flow(const Instance& inst, const std::vector<Rational>& y,
                                           const std::vector<Rational>& lambda) {
  VerificationReport report;
  if (y.size() != inst.edge_count() || lambda.size() != inst.vertex_count()) {
    report.add("shape", "", "y must be indexed by edges and lambda by vertices");
    return report;
  }
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    if (y[e].sign() < 0) report.add("nonnegativity", inst.edge(e).id, "y = " + y[e].str());
  }
  for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
    if (lambda[v].sign() <= 0) report.add("lambda-positive", inst.vertex_name(v), "lambda = " + lambda[v].str());
  }
  if (!report.ok) return report;
  check_st_flow(inst, y, "flow-value", report);
  if (lambda[inst.source()] != Rational(1)) {
    report.add("s-TF1", inst.vertex_name(inst.source()), "lambda_s = " + lambda[inst.source()].str());
  }
  auto label = [&](EdgeIndex e) {
    const Edge& edge = inst.edge(e);
    return max(lambda[edge.tail], y[e] / edge.capacity);
  };
  for (VertexIndex w = 0; w < inst.vertex_count(); ++w) {
    if (w == inst.source()) continue;
    std::optional<Rational> best;
    for (EdgeIndex e : inst.in_edges(w)) {
      Rational c = label(e);
      if (!best || c < *best) best = std::move(c);
    }
    if (!best || *best != lambda[w]) {
      report.add("s-TF2", inst.vertex_name(w),
                 "lambda = " + lambda[w].str() + ", min over in-edges = " + (best ? best->str() : "none"));
    }
  }
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    if (y[e].sign() <= 0) continue;
    const Rational expected = label(e);
    if (lambda[inst.edge(e).head] != expected) {
      report.add("s-TF3", inst.edge(e).id,
                 "lambda_head = " + lambda[inst.edge(e).head].str() + ", max{lambda_tail, y/nu} = " + expected.str());
    }
  }
  return report;
}

SinkThinFlow source_to_sink(const Instance& inst, const SourceThinFlow& thin_flow) {
  SinkThinFlow out;
  const auto& lambda = thin_flow.lambda;
  const auto carrying = flow_carrying_vertices(inst, thin_flow.y);
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) out.x.push_back(thin_flow.y[e] / lambda[inst.edge(e).tail]);

  const std::size_t n = inst.vertex_count();
  std::vector<std::optional<Rational>> mu(n);
  const Rational& lambda_t = lambda[inst.sink()];
  for (VertexIndex v = 0; v < n; ++v) {
    if (carrying[v]) mu[v] = lambda_t / lambda[v] - Rational(1);
  }
  // Off the flow, mu_v is the least mu over the flow-carrying vertices first
  // reached from v; relax backwards until nothing changes.
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexIndex v = 0; v < n; ++v) {
      if (carrying[v]) continue;
      for (EdgeIndex e : inst.out_edges(v)) {
        const auto& candidate = mu[inst.edge(e).head];
        if (candidate && (!mu[v] || *candidate < *mu[v])) {
          mu[v] = candidate;
          changed = true;
        }
      }
    }
  }
  for (VertexIndex v = 0; v < n; ++v) out.mu.push_back(mu[v].value_or(Rational(0)));
  return out;
}

VerificationReport verify_sink_thin_flow(const Instance& inst, const std::vector<Rational>& x,
                                         const std::vector<Rational>& mu) {
  VerificationReport report;
  if (x.size() != inst.edge_count() || mu.size() != inst.vertex_count()) {
    report.add("shape", "", "x must be indexed by edges and mu by vertices");
    return report;
  }
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    if (x[e].sign() < 0) report.add("nonnegativity", inst.edge(e).id, "x = " + x[e].str());
  }
  for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
    if (mu[v].sign() < 0) report.add("nonnegativity", inst.vertex_name(v), "mu = " + mu[v].str());
  }
  if (!report.ok) return report;
  if (!mu[inst.sink()].is_zero()) report.add("t-TF1", inst.vertex_name(inst.sink()), "mu_t = " + mu[inst.sink()].str());
  auto label = [&](EdgeIndex e) {
    const Edge& edge = inst.edge(e);
    const Rational& mu_w = mu[edge.head];
    return max(mu_w, (Rational(1) + mu_w) * x[e] / edge.capacity - Rational(1));
  };
  for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
    if (v == inst.sink()) continue;
    std::optional<Rational> best;
    for (EdgeIndex e : inst.out_edges(v)) {
      Rational c = label(e);
      if (!best || c < *best) best = std::move(c);
    }
    if (!best || *best != mu[v]) {
      report.add("t-TF2", inst.vertex_name(v),
                 "mu = " + mu[v].str() + ", min over out-edges = " + (best ? best->str() : "none"));
    }
  }
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    if (x[e].sign() <= 0) continue;
    const Rational expected = label(e);
    if (mu[inst.edge(e).tail] != expected) {
      report.add("t-TF3", inst.edge(e).id,
                 "mu_tail = " + mu[inst.edge(e).tail].str() + ", max{mu_head, (1+mu_head)x/nu-1} = " + expected.str());
    }
  }
  std::vector<Rational> rescaled;
  const Rational mu_s1 = mu[inst.source()] + Rational(1);
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    rescaled.push_back(x[e] * mu_s1 / (mu[inst.edge(e).tail] + Rational(1)));
  }
  check_st_flow(inst, rescaled, "rescaled-flow", report);
  return report;
}

EdgePartition partition_edges(const Instance& inst, const std::vector<Rational>& lambda) {
  EdgePartition p;
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    const Rational& lv = lambda[inst.edge(e).tail];
    const Rational& lw = lambda[inst.edge(e).head];
    if (lw > lv) {
      p.gt.push_back(e);
      p.of_edge.push_back(EdgeClass::Greater);
    } else if (lw == lv) {
      p.eq.push_back(e);
      p.of_edge.push_back(EdgeClass::Equal);
    } else {
      p.lt.push_back(e);
      p.of_edge.push_back(EdgeClass::Less);
    }
  }
  return p;
}

}  // namespace tollflow
