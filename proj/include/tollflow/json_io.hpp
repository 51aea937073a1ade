#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tollflow/rational.hpp"

namespace tollflow::json_io {

using Json = nlohmann::ordered_json;

// Field-level parse of a rational: integer JSON numbers or "p"/"p/q" strings.
// `field` names the location for SyntaxError messages.
Rational rational_from_json(const Json& value, const std::string& field);
Json rational_to_json(const Rational& value);
Json rationals_to_json(const std::vector<Rational>& values);

// Parses a JSON document, converting parser failures into a SyntaxError
// carrying the line number.
Json parse_document(std::string_view text);

const Json& require_field(const Json& object, std::string_view key, const std::string& where);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace tollflow::json_io
