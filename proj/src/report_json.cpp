#include "tollflow/report_json.hpp"

#include "tollflow/error.hpp"

namespace tollflow {

using json_io::rational_from_json;
using json_io::rational_to_json;
using json_io::rationals_to_json;
using json_io::require_field;

namespace {

std::vector<Rational> rational_list(const Json& value, const std::string& where) {
  if (!value.is_array()) throw Error(ErrorKind::SyntaxError, where + " must be a list", where);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(rational_from_json(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json by_edge(const Instance& inst, const std::vector<Rational>& values) {
  Json out = Json::object();
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) out[inst.edge(e).id] = rational_to_json(values[e]);
  return out;
}

Json by_vertex(const Instance& inst, const std::vector<Rational>& values) {
  Json out = Json::object();
  for (VertexIndex v = 0; v < inst.vertex_count(); ++v) out[inst.vertex_name(v)] = rational_to_json(values[v]);
  return out;
}

Json violations_json(const std::vector<Violation>& violations) {
  Json out = Json::array();
  for (const auto& v : violations) {
    out.push_back({{"condition", v.condition}, {"subject", v.subject}, {"detail", v.detail}});
  }
  return out;
}

}  // namespace

FlowOverTime parse_flow(const Instance& inst, std::string_view text) {
  const Json doc = json_io::parse_document(text);
  const Json* entries = &doc;
  std::vector<Rational> queues(inst.edge_count(), Rational(0));
  std::optional<Rational> deficit;
  if (doc.is_object()) {
    entries = &require_field(doc, "inflows", "flow");
    if (auto it = doc.find("initial_queues"); it != doc.end()) {
      if (!it->is_object()) throw Error(ErrorKind::SyntaxError, "flow.initial_queues must be an object", "initial_queues");
      for (const auto& [id, value] : it->items()) {
        queues[inst.edge_index(id)] = rational_from_json(value, "initial_queues." + id);
      }
    }
    if (auto it = doc.find("deficit_horizon"); it != doc.end() && !it->is_null()) {
      deficit = rational_from_json(*it, "deficit_horizon");
    }
  }
  if (!entries->is_array()) throw Error(ErrorKind::SyntaxError, "flow inflows must be a list", "inflows");

  std::vector<StepFunction> inflows(inst.edge_count());
  std::vector<bool> seen(inst.edge_count(), false);
  for (std::size_t k = 0; k < entries->size(); ++k) {
    const Json& entry = (*entries)[k];
    const std::string where = "inflows[" + std::to_string(k) + "]";
    const Json& id = require_field(entry, "edge", where);
    if (!id.is_string()) throw Error(ErrorKind::SyntaxError, where + ".edge must be a string", where + ".edge");
    const EdgeIndex e = inst.edge_index(id.get<std::string>());
    if (seen[e]) throw Error(ErrorKind::DuplicateId, "edge " + id.get<std::string>() + " listed twice", id.get<std::string>());
    seen[e] = true;
    auto bps = rational_list(require_field(entry, "breakpoints", where), where + ".breakpoints");
    auto vals = rational_list(require_field(entry, "values", where), where + ".values");
    try {
      inflows[e] = StepFunction(std::move(bps), std::move(vals));
    } catch (const Error& err) {
      throw Error(ErrorKind::SyntaxError, where + ": " + err.what(), where);
    }
  }
  return FlowOverTime(inst, std::move(inflows), std::move(queues), deficit);
}

Json step_json(const StepFunction& f) {
  return {{"breakpoints", rationals_to_json(f.breakpoints())}, {"values", rationals_to_json(f.values())}};
}

Json pwl_json(const PwlFunction& f) {
  return {{"breakpoints", rationals_to_json(f.breakpoints())},
          {"values", rationals_to_json(f.values())},
          {"final_slope", rational_to_json(f.final_slope())}};
}

Json flow_input_json(const FlowOverTime& flow) {
  const Instance& inst = flow.instance();
  Json inflows = Json::array();
  Json queues = Json::object();
  for (EdgeIndex e = 0; e < inst.edge_count(); ++e) {
    Json entry = {{"edge", inst.edge(e).id}};
    entry.update(step_json(flow.edge_state(e).inflow));
    inflows.push_back(std::move(entry));
    queues[inst.edge(e).id] = rational_to_json(flow.edge_state(e).initial_queue);
  }
  Json out = {{"inflows", std::move(inflows)}, {"initial_queues", std::move(queues)}};
  out["deficit_horizon"] = flow.deficit_horizon() ? rational_to_json(*flow.deficit_horizon()) : Json(nullptr);
  return out;
}

Json verification_json(const VerificationReport& report) {
  return {{"ok", report.ok}, {"violations", violations_json(report.violations)}};
}

Json thin_flow_json(const Instance& inst, const SourceThinFlow& source, const SinkThinFlow& sink) {
  const EdgePartition partition = partition_edges(inst, source.lambda);
  auto ids = [&](const std::vector<EdgeIndex>& edges) {
    Json out = Json::array();
    for (EdgeIndex e : edges) out.push_back(inst.edge(e).id);
    return out;
  };
  Json carrying = Json::array();
  for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
    if (source.flow_carrying[v]) carrying.push_back(inst.vertex_name(v));
  }
  return {{"source_thin_flow", {{"y", by_edge(inst, source.y)}, {"lambda", by_vertex(inst, source.lambda)}}},
          {"sink_thin_flow", {{"x", by_edge(inst, sink.x)}, {"mu", by_vertex(inst, sink.mu)}}},
          {"flow_carrying", std::move(carrying)},
          {"partition", {{"greater", ids(partition.gt)}, {"equal", ids(partition.eq)}, {"less", ids(partition.lt)}}}};
}

Json conservation_json(const Instance& inst, const ConservationReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"vertex", inst.vertex_name(v.vertex)},
                          {"start", rational_to_json(v.start)},
                          {"end", v.end ? rational_to_json(*v.end) : Json(nullptr)},
                          {"net_outflow", rational_to_json(v.net_outflow)},
                          {"requirement", v.requirement}});
  }
  return {{"ok", report.ok},
          {"mode", report.deficit_horizon ? "deficit" : "strict"},
          {"deficit_horizon", report.deficit_horizon ? rational_to_json(*report.deficit_horizon) : Json(nullptr)},
          {"violations", std::move(violations)}};
}

Json equilibrium_json(const Instance& inst, const EquilibriumReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"edge", inst.edge(v.edge).id},
                          {"time", rational_to_json(v.time)},
                          {"path_cost", rational_to_json(v.path_cost)},
                          {"min_cost", rational_to_json(v.min_cost)},
                          {"tail", v.tail}});
  }
  return {{"ok", report.ok},
          {"checked_times", report.checked_times.size()},
          {"tail_checked", report.tail_checked},
          {"tail_start", report.tail_start ? rational_to_json(*report.tail_start) : Json(nullptr)},
          {"violations", std::move(violations)}};
}

Json certificate_json(const Instance& inst, const CertificateReport& report) {
  return {{"ok", report.ok},
          {"violations", violations_json(report.violations)},
          {"conservation", conservation_json(inst, report.conservation)},
          {"equilibrium", equilibrium_json(inst, report.equilibrium)}};
}

Json steady_state_json(const Instance& inst, const SteadyStateSolution& sol) {
  Json labels = Json::object();
  for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
    if (!sol.flow_carrying[v]) continue;
    labels[inst.vertex_name(v)] = {{"intercept", rational_to_json(sol.label_intercept[v])},
                                   {"slope", rational_to_json(sol.label_slope[v])}};
  }
  return {{"objective", rational_to_json(sol.objective)},
          {"lambda", by_vertex(inst, sol.lambda)},
          {"reduced_cost", by_edge(inst, sol.lp.reduced_cost)},
          {"y", by_edge(inst, sol.y)},
          {"d", by_vertex(inst, sol.dual.d)},
          {"p", by_edge(inst, sol.dual.p)},
          {"inflow", by_edge(inst, sol.inflow)},
          {"initial_queue", by_edge(inst, sol.initial_queue)},
          {"growth", by_edge(inst, sol.growth)},
          {"labels", std::move(labels)},
          {"deficit_horizon", rational_to_json(tau_max(inst))},
          {"certified", sol.certified}};
}

Json flow_json(const FlowOverTime& flow) {
  const Instance& inst = flow.instance();
  Json edges = Json::array();
  for (const auto& state : flow.edge_states()) {
    edges.push_back({{"edge", inst.edge(state.edge).id},
                     {"initial_queue", rational_to_json(state.initial_queue)},
                     {"inflow", step_json(state.inflow)},
                     {"outflow", step_json(state.outflow)},
                     {"queue", pwl_json(state.queue)}});
  }
  return {{"last_event", rational_to_json(flow.last_event())}, {"edges", std::move(edges)}};
}

Json error_json(const Error& err) {
  Json out = {{"error", error_kind_name(err.kind())}, {"message", err.what()}};
  if (!err.subject().empty()) out["subject"] = err.subject();
  return out;
}

}  // namespace tollflow
