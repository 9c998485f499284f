#pragma once

// Minimal validator for the subset of JSON Schema used in docs/api_schema.json:
// type, required, properties, additionalProperties (false), items, enum,
// minimum, pattern and local $ref.

#include <fstream>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

namespace schema {

using nlohmann::json;

class Checker {
 public:
  explicit Checker(json doc) : doc_(std::move(doc)) {}

  static Checker from_file(const std::string& path) {
    std::ifstream in(path);
    return Checker(json::parse(in));
  }

  // Schema of a response, or null when the document lists none.
  const json* response_schema(const std::string& path, const std::string& method, int status) const {
    const auto& p = doc_.at("paths").at(path).at(method).at("responses");
    const auto key = std::to_string(status);
    if (!p.contains(key) || !p.at(key).contains("schema")) return nullptr;
    return &p.at(key).at("schema");
  }

  bool has_response(const std::string& path, const std::string& method, int status) const {
    const auto& p = doc_.at("paths");
    return p.contains(path) && p.at(path).contains(method) &&
           p.at(path).at(method).at("responses").contains(std::to_string(status));
  }

  const json& component(const std::string& name) const { return doc_.at("components").at("schemas").at(name); }

  // Empty result means the value conforms.
  std::vector<std::string> validate(const json& value, const json& schema, const std::string& where = "$") const {
    std::vector<std::string> errs;
    check(value, schema, where, errs);
    return errs;
  }

 private:
  static bool type_matches(const json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
  }

  void check(const json& v, const json& s, const std::string& where, std::vector<std::string>& errs) const {
    if (s.contains("$ref")) {
      const auto ref = s.at("$ref").get<std::string>();
      const std::string prefix = "#/components/schemas/";
      check(v, component(ref.substr(prefix.size())), where, errs);
      return;
    }
    if (s.contains("type")) {
      bool ok = false;
      if (s.at("type").is_array()) {
        for (const auto& t : s.at("type")) ok = ok || type_matches(v, t.get<std::string>());
      } else {
        ok = type_matches(v, s.at("type").get<std::string>());
      }
      if (!ok) {
        errs.push_back(where + ": expected " + s.at("type").dump() + ", got " + v.type_name());
        return;
      }
    }
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s.at("enum")) found = found || e == v;
      if (!found) errs.push_back(where + ": " + v.dump() + " not in enum");
    }
    if (s.contains("minimum") && v.is_number() && v.get<double>() < s.at("minimum").get<double>()) {
      errs.push_back(where + ": below minimum");
    }
    if (s.contains("pattern") && v.is_string() &&
        !std::regex_search(v.get<std::string>(), std::regex(s.at("pattern").get<std::string>()))) {
      errs.push_back(where + ": does not match pattern");
    }
    if (v.is_object()) {
      for (const auto& r : s.value("required", json::array())) {
        if (!v.contains(r.get<std::string>())) errs.push_back(where + ": missing '" + r.get<std::string>() + "'");
      }
      const auto props = s.value("properties", json::object());
      for (const auto& [k, sub] : v.items()) {
        if (props.contains(k)) {
          check(sub, props.at(k), where + "." + k, errs);
        } else if (s.contains("additionalProperties") && s.at("additionalProperties") == false) {
          errs.push_back(where + ": unexpected property '" + k + "'");
        }
      }
    }
    if (v.is_array() && s.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s.at("items"), where + "[" + std::to_string(i) + "]", errs);
    }
  }

  json doc_;
};

}  // namespace schema
