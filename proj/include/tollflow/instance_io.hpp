#pragma once

#include <string>
#include <string_view>

#include "tollflow/instance.hpp"

namespace tollflow {

// Instance documents are JSON:
//   {"vertices":["s","v","t"], "source":"s", "sink":"t", "inflow":"2",
//    "edges":[{"id":"e1","tail":"s","head":"v","transit":"0","capacity":"2","toll":"2"}, ...]}
// Rationals are JSON integers or "p" / "p/q" strings.
InstanceSpec parse_instance_spec(std::string_view text);
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

Instance load_instance_file(const std::string& path);

}  // namespace tollflow
