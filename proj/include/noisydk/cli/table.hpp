// Copyright 2026 The noisydk Authors
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

// Tabular output. CSV uses 17 significant digits and '\n' line ends; the
// JSON form carries the same rows plus a meta block with the resolved
// configuration. Neither contains timestamps or host data, so identical
// inputs give identical bytes.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "noisydk/cli/config.hpp"
#include "noisydk/errors.hpp"

namespace noisydk::cli {

inline constexpr const char* kVersion = "1.0.0";

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
      throw DomainError("table row has " + std::to_string(row.size()) +
                        " cells, expected " + std::to_string(columns.size()));
    rows.push_back(std::move(row));
  }

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw DomainError("no column '" + name + "'");
  }

  double number(std::size_t row, const std::string& name) const {
    return std::get<double>(rows.at(row).at(column(name)));
  }
};

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace detail

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << detail::csv_field(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "");
      if (const double* d = std::get_if<double>(&row[i]))
        os << format_number(*d);
      else
        os << detail::csv_field(std::get<std::string>(row[i]));
    }
    os << '\n';
  }
}

/// Rows as arrays; non-finite numbers become their CSV spelling as strings.
inline void write_json(std::ostream& os, const Table& t, const RunConfig& cfg) {
  using nlohmann::ordered_json;
  ordered_json meta;
  meta["command"] = cfg.command;
  meta["panel"] = cfg.panel;
  meta["seed"] = cfg.seed;
  meta["version"] = kVersion;
  ordered_json conf = ordered_json::object();
  const Settings s = to_settings(cfg);
  for (auto k : kKeys) conf[std::string(k)] = s.at(std::string(k));
  meta["config"] = std::move(conf);

  ordered_json doc;
  doc["meta"] = std::move(meta);
  doc["columns"] = t.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json r = ordered_json::array();
    for (const Cell& c : row) {
      if (const double* d = std::get_if<double>(&c))
        r.push_back(std::isfinite(*d) ? ordered_json(*d)
                                      : ordered_json(format_number(*d)));
      else
        r.push_back(std::get<std::string>(c));
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

inline void write_table(std::ostream& os, const Table& t, const RunConfig& cfg) {
  if (cfg.format == "json")
    write_json(os, t, cfg);
  else
    write_csv(os, t);
}

/// Write to cfg.out ("-" is the given fallback stream).
inline void emit(const Table& t, const RunConfig& cfg, std::ostream& fallback) {
  if (cfg.out == "-" || cfg.out.empty()) {
    write_table(fallback, t, cfg);
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ConfigError("out", "cannot open '" + cfg.out + "' for writing");
  write_table(f, t, cfg);
  if (!f) throw ConfigError("out", "write to '" + cfg.out + "' failed");
}

}  // namespace noisydk::cli
