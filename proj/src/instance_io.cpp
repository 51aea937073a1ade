#include "tollflow/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tollflow/error.hpp"
#include "tollflow/json_io.hpp"

namespace tollflow {

namespace json_io {

Rational rational_from_json(const Json& value, const std::string& field) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) {
      return Rational(mpz_class(std::to_string(value.get<unsigned long long>())), mpz_class(1));
    }
    return Rational(static_cast<long>(value.get<long long>()));
  }
  if (value.is_string()) {
    try {
      return Rational::parse(value.get<std::string>());
    } catch (const Error& err) {
      throw Error(ErrorKind::SyntaxError, "field " + field + ": " + err.what(), field);
    }
  }
  throw Error(ErrorKind::SyntaxError,
              "field " + field + ": expected an integer or \"p/q\" string, got " + value.dump(), field);
}

Json rational_to_json(const Rational& value) { return value.str(); }

Json rationals_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& err) {
    const std::size_t upto = std::min<std::size_t>(err.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ": " + err.what(),
                "line " + std::to_string(line));
  }
}

const Json& require_field(const Json& object, std::string_view key, const std::string& where) {
  if (!object.is_object()) throw Error(ErrorKind::SyntaxError, where + " must be an object", where);
  const auto it = object.find(std::string(key));
  if (it == object.end()) {
    throw Error(ErrorKind::SyntaxError, "missing field " + where + "." + std::string(key),
                where + "." + std::string(key));
  }
  return *it;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'", path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'", path);
  out << contents;
  if (!out) throw Error(ErrorKind::IoError, "write failed for '" + path + "'", path);
}

}  // namespace json_io

namespace {

using json_io::Json;

std::string string_field(const Json& object, std::string_view key, const std::string& where) {
  const Json& value = json_io::require_field(object, key, where);
  if (!value.is_string()) {
    throw Error(ErrorKind::SyntaxError, "field " + where + "." + std::string(key) + " must be a string",
                where + "." + std::string(key));
  }
  return value.get<std::string>();
}

}  // namespace

InstanceSpec parse_instance_spec(std::string_view text) {
  const Json doc = json_io::parse_document(text);
  if (!doc.is_object()) throw Error(ErrorKind::SyntaxError, "instance document must be a JSON object", "$");
  InstanceSpec spec;
  const Json& vertices = json_io::require_field(doc, "vertices", "$");
  if (!vertices.is_array()) throw Error(ErrorKind::SyntaxError, "field $.vertices must be an array", "$.vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!vertices[i].is_string()) {
      throw Error(ErrorKind::SyntaxError, "vertex names must be strings", "$.vertices[" + std::to_string(i) + "]");
    }
    spec.vertices.push_back(vertices[i].get<std::string>());
  }
  spec.source = string_field(doc, "source", "$");
  spec.sink = string_field(doc, "sink", "$");
  spec.inflow = json_io::rational_from_json(json_io::require_field(doc, "inflow", "$"), "$.inflow");
  const Json& edges = json_io::require_field(doc, "edges", "$");
  if (!edges.is_array()) throw Error(ErrorKind::SyntaxError, "field $.edges must be an array", "$.edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "$.edges[" + std::to_string(i) + "]";
    const Json& e = edges[i];
    InstanceSpec::EdgeSpec edge;
    edge.id = string_field(e, "id", where);
    edge.tail = string_field(e, "tail", where);
    edge.head = string_field(e, "head", where);
    edge.transit = json_io::rational_from_json(json_io::require_field(e, "transit", where), where + ".transit");
    edge.capacity = json_io::rational_from_json(json_io::require_field(e, "capacity", where), where + ".capacity");
    edge.toll = e.contains("toll") ? json_io::rational_from_json(e["toll"], where + ".toll") : Rational(0);
    spec.edges.push_back(std::move(edge));
  }
  return spec;
}

Instance parse_instance(std::string_view text) { return validate_instance(parse_instance_spec(text)); }

std::string serialize_instance(const Instance& inst) {
  Json doc;
  doc["vertices"] = inst.vertex_names();
  doc["source"] = inst.vertex_name(inst.source());
  doc["sink"] = inst.vertex_name(inst.sink());
  doc["inflow"] = inst.inflow().str();
  Json edges = Json::array();
  for (const Edge& e : inst.edges()) {
    Json edge;
    edge["id"] = e.id;
    edge["tail"] = inst.vertex_name(e.tail);
    edge["head"] = inst.vertex_name(e.head);
    edge["transit"] = e.transit.str();
    edge["capacity"] = e.capacity.str();
    edge["toll"] = e.toll.str();
    edges.push_back(std::move(edge));
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

Instance load_instance_file(const std::string& path) { return parse_instance(json_io::read_file(path)); }

}  // namespace tollflow
