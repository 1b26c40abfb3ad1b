// Copyright 2026 The mapeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Minimal validator for the subset of JSON Schema used by the report schema:
// type (string or list), required, properties, additionalProperties: false,
// items, minItems, maxItems and enum.

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

namespace mapeval::testing {

inline bool json_has_type(const nlohmann::json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "number") return value.is_number();
  if (type == "integer") return value.is_number_integer();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

inline void check_schema(const nlohmann::json& value, const nlohmann::json& schema, const std::string& where,
                         std::vector<std::string>& problems) {
  if (schema.contains("type")) {
    std::vector<std::string> types;
    if (schema["type"].is_array()) {
      for (const auto& t : schema["type"]) types.push_back(t.get<std::string>());
    } else {
      types.push_back(schema["type"].get<std::string>());
    }
    bool ok = false;
    for (const auto& t : types) ok = ok || json_has_type(value, t);
    if (!ok) {
      problems.push_back(where + ": unexpected type");
      return;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"]) found = found || e == value;
    if (!found) problems.push_back(where + ": value not in enum");
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!value.contains(key.get<std::string>())) problems.push_back(where + ": missing " + key.get<std::string>());
      }
    }
    const bool closed = schema.value("additionalProperties", true) == false;
    for (const auto& [key, child] : value.items()) {
      const bool described = schema.contains("properties") && schema["properties"].contains(key);
      const bool listed = schema.contains("required") &&
                          std::find(schema["required"].begin(), schema["required"].end(), key) != schema["required"].end();
      if (described) {
        check_schema(child, schema["properties"][key], where + "." + key, problems);
      } else if (closed && !listed) {
        problems.push_back(where + ": unexpected key " + key);
      }
    }
  }
  if (value.is_array()) {
    if (schema.contains("minItems") && value.size() < schema["minItems"].get<std::size_t>()) {
      problems.push_back(where + ": too few items");
    }
    if (schema.contains("maxItems") && value.size() > schema["maxItems"].get<std::size_t>()) {
      problems.push_back(where + ": too many items");
    }
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        check_schema(value[i], schema["items"], where + "[" + std::to_string(i) + "]", problems);
      }
    }
  }
}

inline std::vector<std::string> schema_problems(const nlohmann::json& value, const nlohmann::json& schema) {
  std::vector<std::string> problems;
  check_schema(value, schema, "$", problems);
  return problems;
}

}  // namespace mapeval::testing
