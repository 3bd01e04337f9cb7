// Copyright 2026 The mcl Authors
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

// CSV and JSON report emission. Field names are listed in docs/SCHEMA.md.
// Floats are printed with 17 significant digits in both formats.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mcl/errors.hpp"

namespace mcl::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class Format { csv, json };

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw PreconditionError("unknown format '" + s + "' (expected csv or json)");
}

using Cell = std::variant<std::monostate, bool, std::int64_t, std::uint64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    detail::require(row.size() == columns.size(), "row width does not match the header");
    rows.push_back(std::move(row));
  }
};

/// One command's output: scalar and nested fields plus an optional table.
/// JSON carries everything; CSV carries the table, or key,value pairs of the
/// scalar fields when there is no table.
struct Report {
  std::string command;
  Json fields = Json::object();
  std::string table_name = "rows";
  Table table;
};

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

inline Json to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return nullptr;
        else
          return v;
      },
      c);
}

namespace detail {

inline void dump(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump(it.value(), out);
      }
      out += '}';
      return;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump(j[i], out);
      }
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

inline std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return "";
        else if constexpr (std::is_same_v<T, bool>)
          return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, double>)
          return format_double(v);
        else if constexpr (std::is_same_v<T, std::string>)
          return csv_field(v);
        else
          return std::to_string(v);
      },
      c);
}

inline std::string csv_scalar(const Json& j) {
  if (j.is_number_float()) return format_double(j.get<double>());
  if (j.is_string()) return csv_field(j.get<std::string>());
  std::string s;
  dump(j, s);
  return csv_field(s);
}

}  // namespace detail

/// Compact JSON with 17-digit floats; non-finite floats become null.
inline std::string dump_json(const Json& j) {
  std::string s;
  detail::dump(j, s);
  return s;
}

inline Json to_json(const Report& r) {
  Json j = Json::object();
  j["schema_version"] = kSchemaVersion;
  j["command"] = r.command;
  for (auto it = r.fields.begin(); it != r.fields.end(); ++it) j[it.key()] = it.value();
  if (!r.table.columns.empty()) {
    Json rows = Json::array();
    for (const auto& row : r.table.rows) {
      Json o = Json::object();
      for (std::size_t i = 0; i < row.size(); ++i) o[r.table.columns[i]] = to_json(row[i]);
      rows.push_back(std::move(o));
    }
    j[r.table_name] = std::move(rows);
  }
  return j;
}

inline std::string to_csv(const Report& r) {
  std::string out;
  if (!r.table.columns.empty()) {
    for (std::size_t i = 0; i < r.table.columns.size(); ++i) {
      if (i) out += ',';
      out += detail::csv_field(r.table.columns[i]);
    }
    out += '\n';
    for (const auto& row : r.table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += detail::csv_cell(row[i]);
      }
      out += '\n';
    }
    return out;
  }
  out = "key,value\n";
  for (auto it = r.fields.begin(); it != r.fields.end(); ++it)
    out += detail::csv_field(it.key()) + ',' + detail::csv_scalar(it.value()) + '\n';
  return out;
}

inline std::string render(const Report& r, Format f) {
  return f == Format::csv ? to_csv(r) : dump_json(to_json(r)) + '\n';
}

/// Writes to path, or to stdout when path is empty or "-".
inline void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw OutputError("cannot write to stdout");
    return;
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw OutputError("cannot open '" + path + "' for writing");
  os << text;
  os.flush();
  if (!os) throw OutputError("write to '" + path + "' failed");
}

inline void emit(const Report& r, Format f, const std::string& path) { write_text(render(r, f), path); }

}  // namespace mcl::report
