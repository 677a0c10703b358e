// Copyright 2026 The Dephasing Authors
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

// dephasing: time sweeps, oracle validation and timescale tables for the
// two-qubit dephasing channels.
//
//   dephasing evolve     --channel AB --gamma-a 1 --gamma-b 1 --state bell-phi-plus
//   dephasing validate   --state class1 --n 100000 --seed 7
//   dephasing timescales --gamma-a 2 --gamma-b 4 --support all
//
// Exit status: 0 success, 1 configuration error, 2 oracle validation failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dephasing/sweep.hpp"

namespace {

using namespace dephasing;
using namespace dephasing::sweep;

struct Flags {
  std::string config_path;
  std::optional<std::string> channel;
  std::optional<double> gamma, gamma_a, gamma_b;
  std::optional<std::string> state;
  std::optional<double> t_min, t_max;
  std::optional<int> points;
  bool log = false;
  std::optional<double> epsilon;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
  std::optional<double> z_max;
  std::optional<std::string> support;
  std::string out_path;
  std::string summary_path;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON experiment configuration");
  cmd->add_option("--channel", f.channel, "A, B, AB, D or full");
  cmd->add_option("--gamma", f.gamma, "collective dephasing rate");
  cmd->add_option("--gamma-a", f.gamma_a, "local dephasing rate of qubit A");
  cmd->add_option("--gamma-b", f.gamma_b, "local dephasing rate of qubit B");
  cmd->add_option("--support", f.support, "element pairs for tau, e.g. all or 12,14");
  cmd->add_option("--out", f.out_path, "output table path (default stdout)");
  cmd->add_option("--summary", f.summary_path, "summary JSON path (default stderr)");
}

void add_sweep(CLI::App* cmd, Flags& f) {
  cmd->add_option("--state", f.state,
                  "preset name, class1:a1,a2,a4, class2:a1,a2,a3, 4 real or 8 re,im amplitudes");
  cmd->add_option("--t-min", f.t_min, "first grid time");
  cmd->add_option("--t-max", f.t_max, "last grid time");
  cmd->add_option("--points", f.points, "number of grid points");
  cmd->add_flag("--log", f.log, "logarithmic grid spacing");
  cmd->add_option("--epsilon", f.epsilon, "disentanglement threshold");
  cmd->add_option("--n", f.n, "trajectories per grid point");
  cmd->add_option("--seed", f.seed, "oracle seed");
  cmd->add_option("--z-max", f.z_max, "oracle pass threshold in standard errors");
  cmd->add_option("--threads", f.threads, "oracle worker threads (0 = all cores)");
}

ExperimentConfig build_config(const Flags& f) {
  ExperimentConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw ConfigError("cannot open config file " + f.config_path);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    apply_json(cfg, doc);
  }
  if (f.channel) {
    const auto kind = parse_channel_kind(*f.channel);
    if (!kind) throw ConfigError("unknown channel '" + *f.channel + "'");
    cfg.channel = *kind;
  }
  if (f.gamma) cfg.rates.collective = *f.gamma;
  if (f.gamma_a) cfg.rates.local_a = *f.gamma_a;
  if (f.gamma_b) cfg.rates.local_b = *f.gamma_b;
  if (f.state) cfg.state = *f.state;
  if (f.t_min) cfg.grid.t_min = *f.t_min;
  if (f.t_max) cfg.grid.t_max = *f.t_max;
  if (f.points) cfg.grid.points = *f.points;
  if (f.log) cfg.grid.spacing = Spacing::Log;
  if (f.epsilon) cfg.epsilon = *f.epsilon;
  if (f.n) cfg.oracle.n = *f.n;
  if (f.seed) cfg.oracle.seed = *f.seed;
  if (f.z_max) cfg.oracle.z_max = *f.z_max;
  if (f.support) cfg.support = parse_support(*f.support);
  check(cfg);
  return cfg;
}

// Runs body with the table stream (file or stdout).
template <typename Body>
void with_output(const std::string& path, Body&& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open output file " + path);
  body(os);
}

void emit_summary(const std::string& path, const nlohmann::json& j) {
  if (path.empty()) {
    std::cerr << j.dump(2) << '\n';
    return;
  }
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open summary file " + path);
  os << j.dump(2) << '\n';
}

int cmd_evolve(const Flags& f) {
  const auto cfg = build_config(f);
  const auto rows = evolve_rows(cfg);
  with_output(f.out_path, [&](std::ostream& os) { write_csv(os, rows); });
  emit_summary(f.summary_path, evolve_summary(cfg));
  return kExitOk;
}

int cmd_validate(const Flags& f) {
  const auto cfg = build_config(f);
  if (!cfg.oracle.enabled) throw ConfigError("oracle is disabled in the configuration");
  if (cfg.oracle.n < 1000) throw ConfigError("validate needs --n >= 1000");
  if (!(cfg.oracle.z_max > 0.0)) throw ConfigError("--z-max must be positive");
  if (cfg.oracle.n < 10000 || cfg.oracle.z_max < 5.0)
    std::cerr << "warning: n=" << cfg.oracle.n << " z_max=" << cfg.oracle.z_max
              << ": verdicts at small n or below 5 sigma fail spuriously with "
                 "non-negligible probability\n";

  const auto rep = run_oracle(cfg, f.threads);
  with_output(f.out_path, [&](std::ostream& os) { write_oracle_table(os, rep); });

  const auto [t_worst, worst] = rep.worst();
  nlohmann::json j;
  j["channel"] = std::string(to_string(cfg.channel));
  j["state"] = cfg.state;
  j["n"] = rep.n;
  j["seed"] = rep.seed;
  j["z_max"] = rep.z_max;
  j["pass"] = rep.pass();
  j["worst"] = {{"element", element_name(worst)}, {"t", t_worst}, {"z", worst.z}};
  emit_summary(f.summary_path, j);

  if (!rep.pass()) {
    std::cerr << "validation failed: worst element " << element_name(worst) << " at t="
              << format_number(t_worst) << " z=" << format_number(worst.z) << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_timescales(const Flags& f) {
  auto cfg = build_config(f);
  const auto support = cfg.support.empty() ? all_off_diagonal_pairs() : cfg.support;
  const auto ts = timescales(cfg.rates, support);
  const auto j = timescales_json(ts);
  with_output(f.out_path, [&](std::ostream& os) {
    const auto text = [](const nlohmann::json& v) {
      return v.is_string() ? v.get<std::string>() : format_number(v.get<double>());
    };
    os << "quantity,value\n";
    for (const char* key : {"tau_A", "tau_B", "tau_e", "tau"})
      os << key << ',' << text(j.at(key)) << '\n';
    for (const auto& [key, v] : j.at("Gamma_ij").items()) os << key << ',' << text(v) << '\n';
  });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit dephasing channels: sweeps, oracle validation, timescales"};
  app.require_subcommand(1);
  Flags flags;

  auto* evolve = app.add_subcommand("evolve", "closed-form time sweep as CSV");
  add_common(evolve, flags);
  add_sweep(evolve, flags);
  auto* validate = app.add_subcommand("validate", "Monte Carlo oracle against the closed form");
  add_common(validate, flags);
  add_sweep(validate, flags);
  auto* times = app.add_subcommand("timescales", "dephasing and entanglement timescales");
  add_common(times, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: usage: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (evolve->parsed()) return cmd_evolve(flags);
    if (validate->parsed()) return cmd_validate(flags);
    return cmd_timescales(flags);
  } catch (const ConfigError& e) {
    std::cerr << "error: config: " << e.what() << '\n';
  } catch (const dephasing::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitConfig;
}
