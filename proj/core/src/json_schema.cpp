#include "frobcoh/json_schema.hpp"

#include <cstdlib>
#include <fstream>

#include "frobcoh/error.hpp"

namespace frobcoh {

namespace {

using nlohmann::json;

bool has_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  void check(const json& v, const json& s, const std::string& at) {
    if (s.contains("$ref")) {
      const auto ref = s["$ref"].get<std::string>();
      if (ref.rfind("#/", 0) != 0) {
        errors.push_back(at + ": unsupported $ref " + ref);
        return;
      }
      check(v, root_.at(json::json_pointer(ref.substr(1))), at);
      return;
    }
    if (s.contains("type")) {
      bool ok = false;
      if (s["type"].is_array()) {
        for (const auto& t : s["type"]) ok |= has_type(v, t.get<std::string>());
      } else {
        ok = has_type(v, s["type"].get<std::string>());
      }
      if (!ok) {
        errors.push_back(at + ": expected type " + s["type"].dump());
        return;
      }
    }
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) found |= (e == v);
      if (!found) errors.push_back(at + ": value " + v.dump() + " not in enum");
    }
    if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>()) {
      errors.push_back(at + ": below minimum");
    }
    if (s.contains("minLength") && v.is_string() &&
        v.get<std::string>().size() < s["minLength"].get<std::size_t>()) {
      errors.push_back(at + ": string too short");
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) {
        errors.push_back(at + ": too few items");
      }
      if (s.contains("items")) {
        for (std::size_t k = 0; k < v.size(); ++k) check(v[k], s["items"], at + "/" + std::to_string(k));
      }
    }
    if (v.is_object()) {
      if (s.contains("required")) {
        for (const auto& r : s["required"]) {
          if (!v.contains(r.get<std::string>())) errors.push_back(at + ": missing " + r.get<std::string>());
        }
      }
      const json* props = s.contains("properties") ? &s["properties"] : nullptr;
      for (const auto& [key, value] : v.items()) {
        if (props && props->contains(key)) {
          check(value, (*props)[key], at + "/" + key);
        } else if (s.contains("additionalProperties")) {
          const auto& extra = s["additionalProperties"];
          if (extra.is_boolean()) {
            if (!extra.get<bool>()) errors.push_back(at + ": unexpected property " + key);
          } else {
            check(value, extra, at + "/" + key);
          }
        }
      }
    }
  }

  std::vector<std::string> errors;

 private:
  const json& root_;
};

}  // namespace

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidParams, "cannot open " + path);
  return nlohmann::json::parse(in);
}

nlohmann::json certificate_schema() {
  if (const char* env = std::getenv("FROBCOH_SCHEMA_FILE"); env && *env) return load_json_file(env);
  return load_json_file(FROBCOH_SCHEMA_PATH);
}

std::vector<std::string> validate_json(const nlohmann::json& doc, const nlohmann::json& schema) {
  Validator v(schema);
  v.check(doc, schema, "");
  return v.errors;
}

}  // namespace frobcoh
