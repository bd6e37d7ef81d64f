#pragma once

// Validation against the subset of draft-07 used by the shipped certificate schema:
// type, enum, required, properties, additionalProperties, items, minItems,
// minLength, minimum and local $ref.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace frobcoh {

/// Reads the certificate schema from FROBCOH_SCHEMA_FILE in the environment, or the
/// source-tree copy the library was built against.
nlohmann::json certificate_schema();
nlohmann::json load_json_file(const std::string& path);

/// Empty when doc conforms; otherwise one message per violation, prefixed by the JSON pointer.
std::vector<std::string> validate_json(const nlohmann::json& doc, const nlohmann::json& schema);

}  // namespace frobcoh
