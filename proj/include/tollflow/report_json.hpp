#pragma once

#include <string_view>

#include "tollflow/dynamics.hpp"
#include "tollflow/json_io.hpp"
#include "tollflow/steady.hpp"
#include "tollflow/thin_flow.hpp"

namespace tollflow {

using json_io::Json;

// Flow file: either a list of {"edge", "breakpoints", "values"} entries or
// an object {"inflows": [...], "initial_queues": {edge: q}, "deficit_horizon": T}.
// Edges without an entry carry no flow.
FlowOverTime parse_flow(const Instance& inst, std::string_view text);
Json flow_input_json(const FlowOverTime& flow);

Json step_json(const StepFunction& f);
Json pwl_json(const PwlFunction& f);

Json verification_json(const VerificationReport& report);
Json thin_flow_json(const Instance& inst, const SourceThinFlow& source, const SinkThinFlow& sink);
Json conservation_json(const Instance& inst, const ConservationReport& report);
Json equilibrium_json(const Instance& inst, const EquilibriumReport& report);
Json certificate_json(const Instance& inst, const CertificateReport& report);
Json steady_state_json(const Instance& inst, const SteadyStateSolution& sol);
Json flow_json(const FlowOverTime& flow);
Json error_json(const Error& err);

}  // namespace tollflow
