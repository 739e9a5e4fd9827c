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

// Argument parsing and dispatch. Exit status: 0 success, 1 invalid input or
// a failed computation, 2 verification failure.

#pragma once

#include <exception>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "noisydk/cli/commands.hpp"
#include "noisydk/cli/config.hpp"
#include "noisydk/cli/table.hpp"
#include "noisydk/errors.hpp"

namespace noisydk::cli {

enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitVerifyFailed = 2 };

/// Layered settings -> Invocation. `user` holds config-file and flag values
/// already merged (flags on top).
inline Invocation make_invocation(const std::string& command, const std::string& panel,
                                  const Settings& user) {
  Settings s = merge(default_settings(), command_defaults(command, panel));
  s = merge(std::move(s), user);
  s["command"] = command;
  s["panel"] = panel;
  Invocation inv{resolve(s), {}};
  for (const auto& kv : user) inv.user_keys.insert(kv.first);
  return inv;
}

/// Run one command and write its table. Returns the exit status.
inline int dispatch(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const RunConfig& c = inv.cfg;
  if (c.command == "fig2") {
    emit(cmd_fig2(inv), c, out);
  } else if (c.command == "fig3") {
    emit(cmd_fig3(inv), c, out);
  } else if (c.command == "sweep") {
    emit(cmd_sweep(inv), c, out);
  } else {
    const VerifyReport rep = cmd_verify(inv);
    emit(rep.table, c, out);
    if (!rep.passed) {
      err << "verify: one or more checks failed\n";
      return kExitVerifyFailed;
    }
  }
  return kExitOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noisy Demkov-Kunike two-level simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // every flag maps to a config key; values stay strings until resolve()
  struct Flag {
    const char* name;
    const char* key;
    const char* help;
  };
  static constexpr Flag kFlags[] = {
      {"--delta0", "delta0", "static detuning"},
      {"--delta1", "delta1", "chirp detuning"},
      {"--j", "j", "coupling amplitude"},
      {"--t-cap", "t_cap", "pulse period T"},
      {"--noise", "noise", "telegraph | gaussian-ou"},
      {"--tau-c", "tau_c", "noise correlation time"},
      {"--sigma", "sigma", "noise amplitude"},
      {"--t0", "t0", "flip time or Gaussian-form offset (inf allowed)"},
      {"--t-max", "t_max", "oracle half window"},
      {"--tol", "tol", "ODE tolerance"},
      {"--points", "points", "sweep points"},
      {"--seed", "seed", "random seed"},
      {"--out", "out", "output path, '-' for stdout"},
      {"--format", "format", "csv | json"},
      {"--workers", "workers", "worker threads, 0 = all cores"},
      {"--variant", "variant", "as-printed | validated"},
      {"--axis", "axis", "sweep axis: delta0 delta1 j t0 tau_c sigma"},
      {"--lo", "lo", "sweep start"},
      {"--hi", "hi", "sweep end"},
      {"--op", "op", "sweep operation"},
      {"--trajectories", "trajectories", "Monte Carlo trajectories"},
      {"--j-sigma", "j_sigma", "standard deviation of the coupling distribution"},
      {"--window", "window", "t0 window half width in units of tau_c"},
      {"--measure", "measure", "normalized | per-tau-c"},
  };
  std::vector<std::pair<const Flag*, std::string>> values;
  values.reserve(std::size(kFlags));
  for (const Flag& f : kFlags) values.emplace_back(&f, std::string());
  std::vector<CLI::Option*> opts;
  for (auto& [f, v] : values) opts.push_back(app.add_option(f->name, v, f->help));
  std::string config_path;
  app.add_option("--config", config_path, "key = value settings file");

  std::string panel;
  CLI::App* fig2 = app.add_subcommand("fig2", "single-flip figure data");
  fig2->add_option("panel", panel, "a | b | c | d")->required();
  CLI::App* fig3 = app.add_subcommand("fig3", "Gaussian-form figure data");
  fig3->add_option("panel", panel, "a | b")->required();
  CLI::App* verify = app.add_subcommand("verify", "closed forms vs the ODE oracle");
  CLI::App* sweep = app.add_subcommand("sweep", "one-axis sweep of a survival operation");
  for (CLI::App* sub : {fig2, fig3, verify, sweep}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    Settings user;
    if (!config_path.empty()) user = read_settings_file(config_path);
    for (std::size_t i = 0; i < values.size(); ++i)
      if (opts[i]->count() > 0) user[values[i].first->key] = values[i].second;
    std::string command = "verify";
    for (CLI::App* sub : {fig2, fig3, verify, sweep})
      if (sub->parsed()) command = sub->get_name();
    return dispatch(make_invocation(command, panel, user), out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace noisydk::cli
