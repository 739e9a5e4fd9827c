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

// Run configuration. Settings are flat key=value strings merged in layers
// (built-in defaults < command/panel defaults < config file < command-line
// flags) and then parsed once into a typed RunConfig. Every key is known;
// anything else is rejected with the offending key named.

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "noisydk/errors.hpp"
#include "noisydk/result.hpp"

namespace noisydk::cli {

using Settings = std::map<std::string, std::string>;

/// Recognised keys, in the order they are emitted.
inline constexpr std::array<std::string_view, 26> kKeys = {
    "command", "panel",   "delta0", "delta1",  "j",       "t_cap",
    "noise",   "tau_c",   "sigma",  "t0",      "t_max",   "tol",
    "points",  "seed",    "out",    "format",  "workers", "variant",
    "axis",    "lo",      "hi",     "op",      "trajectories",
    "j_sigma", "window",  "measure"};

inline bool is_known_key(const std::string& k) {
  for (auto key : kKeys)
    if (key == k) return true;
  return false;
}

struct RunConfig {
  std::string command = "verify";
  std::string panel;
  double delta0 = 4.0;
  double delta1 = 5.0;
  double j = std::numbers::pi / 2;
  double t_cap = 1.0;
  std::string noise = "telegraph";
  double tau_c = 1.0;
  double sigma = std::numbers::pi / 2;
  double t0 = 0.0;
  double t_max = 25.0;
  double tol = 1e-10;
  std::uint64_t points = 26;
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string format = "csv";
  std::uint64_t workers = 0;
  Variant variant = Variant::validated;
  std::string axis = "j";
  double lo = 0.0;
  double hi = 3.0;
  std::string op = "noise-free";
  std::uint64_t trajectories = 1000;
  double j_sigma = 1.0;
  double window = 5.0;  ///< t0 window half-width in units of tau_c
  std::string measure = "normalized";

  bool operator==(const RunConfig&) const = default;
};

inline Settings default_settings() {
  return {{"command", "verify"},   {"panel", ""},
          {"delta0", "4"},         {"delta1", "5"},
          {"j", "1.5707963267948966"},
          {"t_cap", "1"},          {"noise", "telegraph"},
          {"tau_c", "1"},          {"sigma", "1.5707963267948966"},
          {"t0", "0"},             {"t_max", "25"},
          {"tol", "1e-10"},        {"points", "26"},
          {"seed", "0"},           {"out", "-"},
          {"format", "csv"},       {"workers", "0"},
          {"variant", "validated"},{"axis", "j"},
          {"lo", "0"},             {"hi", "3"},
          {"op", "noise-free"},    {"trajectories", "1000"},
          {"j_sigma", "1"},        {"window", "5"},
          {"measure", "normalized"}};
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& key, const std::string& v) {
  if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
  if (v == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  if (!v.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || v.empty() || std::isnan(x))
    throw ConfigError(key, "expected a real number, got '" + v + "'");
  return x;
}

inline double parse_finite(const std::string& key, const std::string& v) {
  const double x = parse_real(key, v);
  if (!std::isfinite(x)) throw ConfigError(key, "must be finite, got '" + v + "'");
  return x;
}

inline std::uint64_t parse_count(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw ConfigError(key, "expected a non-negative integer, got '" + v + "'");
  return x;
}

inline std::string format_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

inline void require_one_of(const std::string& key, const std::string& v,
                           std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (v == a) return;
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw ConfigError(key, "'" + v + "' is not one of {" + list + "}");
}

}  // namespace detail

/// Parse "key = value" lines; '#' starts a comment.
inline Settings parse_settings(std::istream& in, const std::string& origin = "config") {
  Settings s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno),
                        "expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    if (!is_known_key(key)) throw ConfigError(key, "unknown key");
    s[key] = detail::trim(line.substr(eq + 1));
  }
  return s;
}

inline Settings read_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  return parse_settings(in, path);
}

/// Overlay `top` onto `base`.
inline Settings merge(Settings base, const Settings& top) {
  for (const auto& [k, v] : top) {
    if (!is_known_key(k)) throw ConfigError(k, "unknown key");
    base[k] = v;
  }
  return base;
}

/// Typed configuration from fully merged settings.
inline RunConfig resolve(const Settings& s) {
  for (const auto& [k, v] : s)
    if (!is_known_key(k)) throw ConfigError(k, "unknown key");
  Settings all = merge(default_settings(), s);
  auto get = [&](const char* k) -> const std::string& { return all.at(k); };
  using namespace detail;

  RunConfig c;
  c.command = get("command");
  require_one_of("command", c.command, {"fig2", "fig3", "verify", "sweep"});
  c.panel = get("panel");
  c.delta0 = parse_finite("delta0", get("delta0"));
  c.delta1 = parse_finite("delta1", get("delta1"));
  c.j = parse_finite("j", get("j"));
  c.t_cap = parse_finite("t_cap", get("t_cap"));
  if (!(c.t_cap > 0.0)) throw ConfigError("t_cap", "must be positive");
  c.noise = get("noise");
  require_one_of("noise", c.noise, {"telegraph", "gaussian-ou"});
  c.tau_c = parse_finite("tau_c", get("tau_c"));
  if (!(c.tau_c > 0.0)) throw ConfigError("tau_c", "must be positive");
  c.sigma = parse_finite("sigma", get("sigma"));
  if (c.sigma < 0.0) throw ConfigError("sigma", "must be non-negative");
  c.t0 = parse_real("t0", get("t0"));
  c.t_max = parse_finite("t_max", get("t_max"));
  if (!(c.t_max >= 10.0 * c.t_cap))
    throw ConfigError("t_max", "must be at least 10 t_cap");
  c.tol = parse_finite("tol", get("tol"));
  if (!(c.tol > 0.0)) throw ConfigError("tol", "must be positive");
  c.points = parse_count("points", get("points"));
  if (c.points < 2) throw ConfigError("points", "must be at least 2");
  c.seed = parse_count("seed", get("seed"));
  c.out = get("out");
  c.format = get("format");
  require_one_of("format", c.format, {"csv", "json"});
  c.workers = parse_count("workers", get("workers"));
  try {
    c.variant = parse_variant(get("variant"));
  } catch (const Error&) {
    throw ConfigError("variant", "'" + get("variant") +
                                     "' is not one of {as-printed, validated}");
  }
  c.axis = get("axis");
  require_one_of("axis", c.axis, {"delta0", "delta1", "j", "t0", "tau_c", "sigma"});
  c.lo = parse_finite("lo", get("lo"));
  c.hi = parse_finite("hi", get("hi"));
  if (!(c.hi > c.lo)) throw ConfigError("hi", "sweep needs lo < hi");
  c.op = get("op");
  require_one_of("op", c.op,
                 {"noise-free", "ae", "rz", "telegraph", "gaussian", "oracle",
                  "oracle-flip", "oracle-gaussian", "mc", "telegraph-average",
                  "gaussian-average"});
  c.trajectories = parse_count("trajectories", get("trajectories"));
  if (c.trajectories < 1) throw ConfigError("trajectories", "must be at least 1");
  c.j_sigma = parse_finite("j_sigma", get("j_sigma"));
  if (!(c.j_sigma > 0.0)) throw ConfigError("j_sigma", "must be positive");
  c.window = parse_finite("window", get("window"));
  if (!(c.window > 0.0)) throw ConfigError("window", "must be positive");
  c.measure = get("measure");
  require_one_of("measure", c.measure, {"normalized", "per-tau-c"});
  return c;
}

/// Settings that reproduce `c` exactly when passed back through resolve().
inline Settings to_settings(const RunConfig& c) {
  using detail::format_real;
  return {{"command", c.command},
          {"panel", c.panel},
          {"delta0", format_real(c.delta0)},
          {"delta1", format_real(c.delta1)},
          {"j", format_real(c.j)},
          {"t_cap", format_real(c.t_cap)},
          {"noise", c.noise},
          {"tau_c", format_real(c.tau_c)},
          {"sigma", format_real(c.sigma)},
          {"t0", format_real(c.t0)},
          {"t_max", format_real(c.t_max)},
          {"tol", format_real(c.tol)},
          {"points", std::to_string(c.points)},
          {"seed", std::to_string(c.seed)},
          {"out", c.out},
          {"format", c.format},
          {"workers", std::to_string(c.workers)},
          {"variant", std::string(to_string(c.variant))},
          {"axis", c.axis},
          {"lo", format_real(c.lo)},
          {"hi", format_real(c.hi)},
          {"op", c.op},
          {"trajectories", std::to_string(c.trajectories)},
          {"j_sigma", format_real(c.j_sigma)},
          {"window", format_real(c.window)},
          {"measure", c.measure}};
}

/// key = value text, one per line, in a fixed order.
inline std::string to_config_text(const RunConfig& c) {
  std::ostringstream os;
  const Settings s = to_settings(c);
  for (auto k : kKeys) os << k << " = " << s.at(std::string(k)) << '\n';
  return os.str();
}

}  // namespace noisydk::cli
