// Copyright 2026 The LyricTrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared JSON helpers for the interchange formats. Internal to the library.

#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "lyrictrack/error.hpp"
#include "lyrictrack/geometry.hpp"

namespace lyrictrack::detail {

using nlohmann::json;

inline json parse_json(std::string_view text, long line = 0) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what(), line);
  }
}

inline const json& require(const json& obj, const char* key, long line = 0) {
  if (!obj.is_object()) throw SchemaError("expected a JSON object", line);
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(std::string("missing field '") + key + "'", line);
  return *it;
}

inline long long require_int(const json& obj, const char* key, long line = 0) {
  const json& v = require(obj, key, line);
  if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer", line);
  return v.get<long long>();
}

inline double require_number(const json& obj, const char* key, long line = 0) {
  const json& v = require(obj, key, line);
  if (!v.is_number()) throw SchemaError(std::string("field '") + key + "' must be a number", line);
  return v.get<double>();
}

inline std::string require_string(const json& obj, const char* key, long line = 0) {
  const json& v = require(obj, key, line);
  if (!v.is_string()) throw SchemaError(std::string("field '") + key + "' must be a string", line);
  return v.get<std::string>();
}

inline const json& require_array(const json& obj, const char* key, long line = 0) {
  const json& v = require(obj, key, line);
  if (!v.is_array()) throw SchemaError(std::string("field '") + key + "' must be an array", line);
  return v;
}

/// Reads [[x,y]x4], normalizes the winding to CCW and checks convexity.
inline geometry::Quad quad_from_json(const json& poly, long line = 0) {
  if (!poly.is_array() || poly.size() != 4) {
    throw SchemaError("'poly' must have exactly 4 vertices", line);
  }
  geometry::Quad q;
  for (std::size_t i = 0; i < 4; ++i) {
    const json& p = poly[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw SchemaError("each vertex must be [x, y]", line);
    }
    q[i] = {p[0].get<double>(), p[1].get<double>()};
  }
  q = geometry::to_ccw(q);
  if (!geometry::is_convex_ccw(q)) throw SchemaError("'poly' must be convex with positive area", line);
  return q;
}

inline json quad_to_json(const geometry::Quad& q) {
  json poly = json::array();
  for (const auto& p : q) poly.push_back(json::array({p.x, p.y}));
  return poly;
}

}  // namespace lyrictrack::detail
