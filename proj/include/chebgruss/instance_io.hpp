// Copyright 2026 The chebgruss Authors
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

#include <cstdio>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "chebgruss/instance.hpp"

namespace chebgruss {

/// Raised for malformed input documents; carries a field-path diagnostic.
struct parse_error : error {
  using error::error;
};

inline constexpr const char* instance_schema_version = "cheb-bounds/1";

/// Formats a double with 17 significant digits, enough for an exact
/// round trip through text.
inline std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

using any_instance = std::variant<real_instance, complex_instance>;

namespace io_detail {

using nlohmann::json;

inline double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) {
    throw parse_error(path + ": expected a number");
  }
  return j.get<double>();
}

inline double coord_real(const json& j, const std::string& path) {
  return number_at(j, path);
}

inline cplx coord_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) {
    throw parse_error(path + ": complex coordinate must be a [re, im] pair");
  }
  return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]")};
}

template <scalar S>
vec<S> parse_vector(const json& j, std::size_t dim, const std::string& path) {
  if (!j.is_array()) throw parse_error(path + ": expected an array");
  if (j.size() != dim) {
    throw parse_error(path + ": has " + std::to_string(j.size()) +
                      " coordinates, expected " + std::to_string(dim));
  }
  vec<S> v(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    if constexpr (is_complex_v<S>) {
      v[k] = coord_complex(j[k], p);
    } else {
      v[k] = coord_real(j[k], p);
    }
  }
  return v;
}

template <scalar S>
sequence<S> parse_sequence(const json& j, std::size_t dim,
                           const std::string& path) {
  if (!j.is_array()) throw parse_error(path + ": expected an array of vectors");
  sequence<S> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(
        parse_vector<S>(j[i], dim, path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

template <scalar S>
instance<S> parse_typed(const json& doc, std::size_t dim) {
  instance<S> inst;
  inst.x = parse_sequence<S>(doc.at("x"), dim, "x");
  if (doc.contains("y")) {
    inst.y = parse_sequence<S>(doc.at("y"), dim, "y");
    if (!inst.y.empty() && inst.y.size() != inst.x.size()) {
      throw parse_error("y: has " + std::to_string(inst.y.size()) +
                        " vectors, expected " + std::to_string(inst.x.size()));
    }
  }
  if (doc.contains("weights")) {
    const json& jw = doc.at("weights");
    if (!jw.is_array()) throw parse_error("weights: expected an array");
    if (jw.size() != inst.x.size()) {
      throw parse_error("weights: has " + std::to_string(jw.size()) +
                        " entries, expected " + std::to_string(inst.x.size()));
    }
    std::vector<double> p(jw.size());
    for (std::size_t i = 0; i < jw.size(); ++i) {
      p[i] = number_at(jw[i], "weights[" + std::to_string(i) + "]");
    }
    inst.w = weights(std::move(p));
  } else {
    inst.w = weights::uniform(inst.x.size());
  }
  if (doc.contains("enclosures")) {
    const json& je = doc.at("enclosures");
    if (!je.is_object()) throw parse_error("enclosures: expected an object");
    const bool has_xlow = je.contains("x_low"), has_xhigh = je.contains("x_high");
    const bool has_ylow = je.contains("y_low"), has_yhigh = je.contains("y_high");
    if (has_xlow != has_xhigh) {
      throw parse_error("enclosures: x_low and x_high must come together");
    }
    if (has_ylow != has_yhigh) {
      throw parse_error("enclosures: y_low and y_high must come together");
    }
    if (has_xlow) {
      inst.ex = ball_enclosure<S>{
          parse_vector<S>(je.at("x_low"), dim, "enclosures.x_low"),
          parse_vector<S>(je.at("x_high"), dim, "enclosures.x_high")};
    }
    if (has_ylow) {
      inst.ey = ball_enclosure<S>{
          parse_vector<S>(je.at("y_low"), dim, "enclosures.y_low"),
          parse_vector<S>(je.at("y_high"), dim, "enclosures.y_high")};
    }
  }
  return inst;
}

inline void append_coord(std::string& out, double c) {
  out += format_float(c);
}

inline void append_coord(std::string& out, const cplx& c) {
  out += '[';
  out += format_float(c.real());
  out += ", ";
  out += format_float(c.imag());
  out += ']';
}

template <scalar S>
void append_vector(std::string& out, const vec<S>& v) {
  out += '[';
  for (std::size_t k = 0; k < v.dim(); ++k) {
    if (k) out += ", ";
    append_coord(out, v[k]);
  }
  out += ']';
}

template <scalar S>
void append_sequence(std::string& out, const sequence<S>& s) {
  out += "[\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += "    ";
    append_vector(out, s[i]);
    if (i + 1 < s.size()) out += ',';
    out += '\n';
  }
  out += "  ]";
}

}  // namespace io_detail

/// Parses an instance document, dispatching on its "field" tag. Throws
/// parse_error with a field-path diagnostic on any schema violation.
inline any_instance parse_instance_json(const std::string& text) {
  io_detail::json doc;
  try {
    doc = io_detail::json::parse(text);
  } catch (const std::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw parse_error("top level: expected an object");
  if (!doc.contains("version") || !doc.at("version").is_string() ||
      doc.at("version").get<std::string>() != instance_schema_version) {
    throw parse_error(std::string("version: expected \"") +
                      instance_schema_version + "\"");
  }
  if (!doc.contains("field") || !doc.at("field").is_string()) {
    throw parse_error("field: expected \"real\" or \"complex\"");
  }
  const std::string field = doc.at("field").get<std::string>();
  if (!doc.contains("dimension") || !doc.at("dimension").is_number_integer() ||
      doc.at("dimension").get<long long>() < 1) {
    throw parse_error("dimension: expected a positive integer");
  }
  const auto dim = doc.at("dimension").get<std::size_t>();
  if (!doc.contains("x")) throw parse_error("x: required");
  if (field == "real") {
    return io_detail::parse_typed<double>(doc, dim);
  }
  if (field == "complex") {
    return io_detail::parse_typed<cplx>(doc, dim);
  }
  throw parse_error("field: expected \"real\" or \"complex\", got \"" + field +
                    "\"");
}

/// Serializes an instance back into the document schema, all floats with
/// 17 significant digits.
template <scalar S>
std::string serialize_instance(const instance<S>& inst) {
  std::string out;
  out += "{\n";
  out += "  \"version\": \"";
  out += instance_schema_version;
  out += "\",\n";
  out += std::string("  \"field\": \"") +
         (is_complex_v<S> ? "complex" : "real") + "\",\n";
  const std::size_t dim = inst.x.empty() ? 0 : inst.x.front().dim();
  out += "  \"dimension\": " + std::to_string(dim) + ",\n";
  out += "  \"weights\": [";
  for (std::size_t i = 0; i < inst.w.size(); ++i) {
    if (i) out += ", ";
    out += format_float(inst.w[i]);
  }
  out += "],\n";
  out += "  \"x\": ";
  io_detail::append_sequence(out, inst.x);
  if (!inst.y.empty()) {
    out += ",\n  \"y\": ";
    io_detail::append_sequence(out, inst.y);
  }
  if (inst.ex || inst.ey) {
    out += ",\n  \"enclosures\": {";
    bool first = true;
    auto emit = [&](const char* name, const vec<S>& v) {
      if (!first) out += ',';
      first = false;
      out += "\n    \"";
      out += name;
      out += "\": ";
      io_detail::append_vector(out, v);
    };
    if (inst.ex) {
      emit("x_low", inst.ex->low);
      emit("x_high", inst.ex->high);
    }
    if (inst.ey) {
      emit("y_low", inst.ey->low);
      emit("y_high", inst.ey->high);
    }
    out += "\n  }";
  }
  out += "\n}\n";
  return out;
}

}  // namespace chebgruss
