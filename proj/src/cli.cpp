#include "tollflow/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tollflow/instance_io.hpp"
#include "tollflow/report_json.hpp"
#include "tollflow/steady.hpp"
#include "tollflow/thin_flow.hpp"
#include "tollflow/trajectories.hpp"

namespace tollflow::cli {

ExitCode exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SearchExhausted:
    case ErrorKind::PrimalInfeasible:
    case ErrorKind::UnboundedDual:
    case ErrorKind::NormalizationStuck:
    case ErrorKind::NegativeQueue:
    case ErrorKind::CertificationFailed:
      return InternalError;
    default:
      return InvalidInput;
  }
}

namespace {

struct Config {
  std::string command;
  std::string instance;
  std::string flow;
  std::string horizon = "10";
  unsigned phases = 12;
  std::string format = "json";
  std::string out;
  std::string example;
};

struct Outcome {
  std::string text;
  ExitCode code = Ok;
};

using json_io::rational_to_json;

Instance load_instance(const Config& cfg) {
  if (cfg.instance.empty()) throw Error(ErrorKind::InvalidArgument, cfg.command + " requires --instance", "--instance");
  constexpr std::string_view prefix = "builtin:";
  if (cfg.instance.starts_with(prefix)) return builtin_instance(std::string_view(cfg.instance).substr(prefix.size()));
  return load_instance_file(cfg.instance);
}

FlowOverTime load_flow(const Config& cfg, const Instance& inst) {
  if (cfg.flow.empty()) throw Error(ErrorKind::InvalidArgument, cfg.command + " requires --flow", "--flow");
  return parse_flow(inst, json_io::read_file(cfg.flow));
}

Rational horizon_of(const Config& cfg) {
  Rational h;
  try {
    h = Rational::parse(cfg.horizon);
  } catch (const Error& err) {
    throw Error(ErrorKind::InvalidArgument, std::string("--horizon: ") + err.what(), "--horizon");
  }
  if (h.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "--horizon must be positive", "--horizon");
  return h;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Outcome cmd_validate(const Config& cfg) {
  const Instance inst = load_instance(cfg);
  Json doc = {{"valid", true},
              {"vertices", inst.vertex_count()},
              {"edges", inst.edge_count()},
              {"acyclic", inst.is_acyclic()},
              {"tau_max", rational_to_json(tau_max(inst))},
              {"instance", json_io::parse_document(serialize_instance(inst))}};
  return {dump(doc), Ok};
}

Outcome cmd_thin_flow(const Config& cfg) {
  const Instance inst = load_instance(cfg);
  const SourceThinFlow source = solve_source_thin_flow(inst, thin_flow_options_from_env());
  const SinkThinFlow sink = source_to_sink(inst, source);
  const VerificationReport vs = verify_source_thin_flow(inst, source.y, source.lambda);
  const VerificationReport vt = verify_sink_thin_flow(inst, sink.x, sink.mu);
  Json doc = thin_flow_json(inst, source, sink);
  doc["verification"] = {{"source", verification_json(vs)}, {"sink", verification_json(vt)}};
  return {dump(doc), vs.ok && vt.ok ? Ok : VerificationFailed};
}

struct SteadyRun {
  SteadyStateSolution solution;
  CertificateReport certificate;
};

SteadyRun run_steady(const Instance& inst) {
  const SourceThinFlow thin = solve_source_thin_flow(inst, thin_flow_options_from_env());
  const SteadyLp lp = build_steady_lp(inst, thin.lambda, partition_edges(inst, thin.lambda));
  const PrimalDual pd = solve_primal_dual(inst, lp);
  const DualSolution dual = normalize_dual(inst, thin.lambda, lp, pd.y, pd.dual);
  SteadyRun run{induce_flow(inst, thin.lambda, lp, pd.y, dual), {}};
  run.certificate = certify_steady_equilibrium(inst, run.solution);
  run.solution.certified = run.certificate.ok;
  return run;
}

Outcome cmd_steady_state(const Config& cfg) {
  const Instance inst = load_instance(cfg);
  const SteadyRun run = run_steady(inst);
  Json doc = steady_state_json(inst, run.solution);
  doc["certificate"] = certificate_json(inst, run.certificate);
  return {dump(doc), run.certificate.ok ? Ok : VerificationFailed};
}

Outcome cmd_simulate(const Config& cfg) {
  const Instance inst = load_instance(cfg);
  const FlowOverTime flow = load_flow(cfg, inst);
  const Rational horizon = horizon_of(cfg);
  Json doc = flow_json(flow);
  doc["conservation"] = conservation_json(inst, check_conservation(flow));
  CostEvaluator costs(flow);
  Json samples = Json::array();
  for (long k = 0; k <= 10; ++k) {
    const Rational t = horizon * Rational(k, 10);
    samples.push_back({{"time", rational_to_json(t)}, {"cost", rational_to_json(costs.cost(inst.source(), t))}});
  }
  doc["source_cost"] = std::move(samples);
  return {dump(doc), Ok};
}

Outcome cmd_verify_equilibrium(const Config& cfg) {
  const Instance inst = load_instance(cfg);
  const FlowOverTime flow = load_flow(cfg, inst);
  const ConservationReport conservation = check_conservation(flow);
  const EquilibriumReport equilibrium = check_equilibrium(flow, horizon_of(cfg));
  const bool ok = conservation.ok && equilibrium.ok;
  Json doc = {{"ok", ok},
              {"horizon", rational_to_json(horizon_of(cfg))},
              {"conservation", conservation_json(inst, conservation)},
              {"equilibrium", equilibrium_json(inst, equilibrium)}};
  return {dump(doc), ok ? Ok : VerificationFailed};
}

Outcome reproduce_non_uniqueness() {
  const Fig2Equilibria eq = fig2_equilibria();
  const Rational horizon(5);
  bool ok = true;
  auto describe = [&](const FlowOverTime& flow, const PwlFunction& label) {
    const EquilibriumReport report = check_equilibrium(flow, horizon);
    CostEvaluator costs(flow);
    const VertexIndex s = flow.instance().source();
    bool labels_match = true;
    for (const auto& t : report.checked_times) labels_match = labels_match && costs.cost(s, t) == label.value_at(t);
    ok = ok && report.ok && labels_match;
    return Json{{"equilibrium", equilibrium_json(flow.instance(), report)},
                {"label", pwl_json(label)},
                {"labels_match_on_grid", labels_match},
                {"source_cost_at_0", rational_to_json(costs.cost(s, Rational(0)))},
                {"source_cost_at_1", rational_to_json(costs.cost(s, Rational(1)))}};
  };
  Json doc = {{"example", "non-uniqueness"}, {"instance", "fig2_mul"}, {"horizon", rational_to_json(horizon)}};
  doc["flow_f"] = describe(eq.flow_f, eq.label_f);
  doc["flow_g"] = describe(eq.flow_g, eq.label_g);
  const FlowOverTime even = fig2_even_split();
  const EquilibriumReport even_report = check_equilibrium(even, horizon);
  ok = ok && !even_report.ok;
  doc["even_split"] = equilibrium_json(even.instance(), even_report);
  doc["reproduced"] = ok;
  return {dump(doc), ok ? Ok : VerificationFailed};
}

Outcome reproduce_non_convergence(const Config& cfg) {
  if (cfg.phases == 0) throw Error(ErrorKind::InvalidArgument, "--phases must be at least 1", "--phases");
  const unsigned n = cfg.phases;
  const auto rows = convergence_table(n);
  const FlowOverTime flow = build_nonconvergent_flow(n);
  bool queues_match = true, exit_identity = true;
  std::vector<Rational> slopes;
  for (unsigned i = 0; i < n; ++i) {
    queues_match = queues_match && flow.edge_state(0).queue.value_at(theta(i)) == rows[i].q1 &&
                   flow.edge_state(2).queue.value_at(Rational(1) + theta(i)) == rows[i].q3;
    if (i > 0) exit_identity = exit_identity && theta(i) + rows[i].q1 == Rational(1) + theta(i - 1);
    const Rational slope = flow.edge_state(0).queue.slope_at(theta(i));
    if (std::find(slopes.begin(), slopes.end(), slope) == slopes.end()) slopes.push_back(slope);
  }
  const EquilibriumReport report = check_equilibrium(flow, theta(n));
  const bool ok = queues_match && exit_identity && report.ok && slopes.size() == n;
  if (cfg.format == "csv") return {convergence_csv(rows), ok ? Ok : VerificationFailed};
  Json table = Json::array();
  for (const auto& row : rows) {
    table.push_back({{"i", row.i},
                     {"theta", rational_to_json(row.theta)},
                     {"f1", rational_to_json(row.f1)},
                     {"f2", rational_to_json(row.f2)},
                     {"q1", rational_to_json(row.q1)},
                     {"q3", rational_to_json(row.q3)}});
  }
  Json doc = {{"example", "non-convergence"},
              {"instance", "fig3_ss"},
              {"phases", n},
              {"table", std::move(table)},
              {"queues_match_closed_form", queues_match},
              {"exit_time_identity", exit_identity},
              {"distinct_q1_slopes", slopes.size()},
              {"equilibrium", equilibrium_json(flow.instance(), report)},
              {"reproduced", ok}};
  return {dump(doc), ok ? Ok : VerificationFailed};
}

Outcome reproduce_deficit_example() {
  const Instance inst = builtin_instance("fig5_deficit");
  const SteadyRun run = run_steady(inst);
  const auto& q = run.solution.initial_queue;
  const Rational gap = q[inst.edge_index("e3")] - q[inst.edge_index("e2")];
  const bool ok = run.certificate.ok && run.solution.objective == Rational(5) && gap == Rational(1);
  Json doc = {{"example", "deficit-example"}, {"instance", "fig5_deficit"}};
  doc["solution"] = steady_state_json(inst, run.solution);
  doc["certificate"] = certificate_json(inst, run.certificate);
  doc["q3_minus_q2"] = rational_to_json(gap);
  doc["reproduced"] = ok;
  return {dump(doc), ok ? Ok : VerificationFailed};
}

Outcome reproduce_thin_flow_example() {
  const Instance inst = builtin_instance("fig1_tf");
  const SourceThinFlow source = solve_source_thin_flow(inst, thin_flow_options_from_env());
  const SinkThinFlow sink = source_to_sink(inst, source);
  auto rs = [](std::initializer_list<Rational> v) { return std::vector<Rational>(v); };
  const bool matches = source.y == rs({1, 1, 1, 0, 0}) && source.lambda == rs({1, 2, 3, 3, 4}) &&
                       sink.x == rs({1, Rational(1, 2), Rational(1, 3), 0, 0}) &&
                       sink.mu == rs({3, 1, Rational(1, 3), 1, 0});
  const VerificationReport vs = verify_source_thin_flow(inst, source.y, source.lambda);
  const VerificationReport vt = verify_sink_thin_flow(inst, sink.x, sink.mu);
  Json doc = {{"example", "thin-flow-example"}, {"instance", "fig1_tf"}};
  doc.update(thin_flow_json(inst, source, sink));
  doc["verification"] = {{"source", verification_json(vs)}, {"sink", verification_json(vt)}};
  doc["matches_published"] = matches;
  const bool ok = matches && vs.ok && vt.ok;
  doc["reproduced"] = ok;
  return {dump(doc), ok ? Ok : VerificationFailed};
}

Outcome dispatch(const Config& cfg) {
  if (cfg.format != "json" && !(cfg.command == "reproduce" && cfg.example == "non-convergence")) {
    throw Error(ErrorKind::InvalidArgument, "--format csv is only available for reproduce non-convergence", "--format");
  }
  if (cfg.command == "validate") return cmd_validate(cfg);
  if (cfg.command == "thin-flow") return cmd_thin_flow(cfg);
  if (cfg.command == "steady-state") return cmd_steady_state(cfg);
  if (cfg.command == "simulate") return cmd_simulate(cfg);
  if (cfg.command == "verify-equilibrium") return cmd_verify_equilibrium(cfg);
  if (cfg.example == "non-uniqueness") return reproduce_non_uniqueness();
  if (cfg.example == "non-convergence") return reproduce_non_convergence(cfg);
  if (cfg.example == "deficit-example") return reproduce_deficit_example();
  return reproduce_thin_flow_example();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Exact dynamic equilibria and steady states for tolled flows over time", "tollflow"};
  app.require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--instance", cfg.instance, "Instance JSON file, or builtin:NAME");
    sub->add_option("--flow", cfg.flow, "Flow-over-time JSON file");
    sub->add_option("--horizon", cfg.horizon, "Time horizon (rational)");
    sub->add_option("--phases", cfg.phases, "Number of phases");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out, "Write the report to this file");
  };
  const std::vector<std::pair<std::string, std::string>> commands{
      {"validate", "Validate an instance"},
      {"thin-flow", "Solve and verify source and sink thin flows"},
      {"steady-state", "Compute and certify an LP-induced steady state"},
      {"simulate", "Propagate a flow over time"},
      {"verify-equilibrium", "Check conservation and equilibrium of a flow"},
      {"reproduce", "Reproduce a built-in example"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub);
    if (name == "reproduce") {
      sub->add_option("example", cfg.example, "Example name")
          ->required()
          ->check(CLI::IsMember({"non-uniqueness", "non-convergence", "deficit-example", "thin-flow-example"}));
    }
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }

  std::vector<const char*> argv{"tollflow"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return Ok;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return InvalidInput;
  }

  try {
    const Outcome outcome = dispatch(cfg);
    if (cfg.out.empty()) {
      out << outcome.text;
    } else {
      json_io::write_file(cfg.out, outcome.text);
    }
    return outcome.code;
  } catch (const Error& e) {
    err << error_json(e).dump() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << Json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return InternalError;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace tollflow::cli
