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

// Experiment configuration, time sweeps and the table/summary formats used by
// the command-line front end.

#ifndef DEPHASING_SWEEP_HPP
#define DEPHASING_SWEEP_HPP

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dephasing/channels.hpp"
#include "dephasing/metrics.hpp"
#include "dephasing/oracle.hpp"
#include "dephasing/state.hpp"

namespace dephasing::sweep {

using nlohmann::json;

/// Malformed or inconsistent experiment configuration.
struct ConfigError : Error {
  using Error::Error;
};

// Process exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitValidation = 2;

//=========================================================================
// Initial states
//=========================================================================

namespace detail {

inline std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  std::string item;
  std::istringstream is{std::string(text)};
  while (std::getline(is, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse number '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw ConfigError("cannot parse number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "bell-phi-plus", "bell-psi-plus", "robust-23", "class1", "class2",
      "three-124",     "three-134",     "fidelity-floor"};
  return names;
}

/// Resolves a state description:
///   - a preset name, e.g. "bell-phi-plus";
///   - "class1:a1,a2,a4" (a1|1> + a2|2> + a4|4>) or "class2:a1,a2,a3"
///     (a1|1> + a2|2> + a3|3>) with real amplitudes;
///   - four real amplitudes "a1,a2,a3,a4";
///   - eight numbers "re1,im1,re2,im2,re3,im3,re4,im4".
/// Explicit amplitudes are rescaled to unit norm.
inline PureState resolve_state(std::string_view text) {
  const double r2 = 1.0 / std::sqrt(2.0), r3 = 1.0 / std::sqrt(3.0);
  using A = PureState::Amplitudes;
  if (text == "bell-phi-plus") return PureState(A{r2, 0.0, 0.0, r2});
  if (text == "bell-psi-plus" || text == "robust-23") return PureState(A{0.0, r2, r2, 0.0});
  if (text == "class1") return PureState(A{r3, r3, 0.0, r3});
  if (text == "class2") return PureState(A{r3, r3, r3, 0.0});
  if (text == "three-124") return PureState(A{r3, r3, 0.0, r3});
  if (text == "three-134") return PureState(A{r3, 0.0, r3, r3});
  if (text == "fidelity-floor") return PureState(A{0.5, 0.5, 0.5, -0.5});

  for (std::string_view family : {"class1:", "class2:"}) {
    if (!text.starts_with(family)) continue;
    const auto v = detail::parse_numbers(text.substr(family.size()));
    if (v.size() != 3)
      throw ConfigError(std::string(family) + " takes exactly three amplitudes");
    A a = family == "class1:" ? A{v[0], v[1], 0.0, v[2]} : A{v[0], v[1], v[2], 0.0};
    try {
      return PureState::normalized(a);
    } catch (const ValidationError& e) {
      throw ConfigError(e.what());
    }
  }

  const auto v = detail::parse_numbers(text);
  A a{};
  if (v.size() == 4) {
    for (std::size_t k = 0; k < 4; ++k) a[k] = v[k];
  } else if (v.size() == 8) {
    for (std::size_t k = 0; k < 4; ++k) a[k] = complex(v[2 * k], v[2 * k + 1]);
  } else {
    throw ConfigError("state must be a preset name or 4 real / 8 re,im amplitudes, got '" +
                      std::string(text) + "'");
  }
  try {
    return PureState::normalized(a);
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
}

//=========================================================================
// Configuration
//=========================================================================

enum class Spacing { Linear, Log };

struct TimeGrid {
  double t_min = 0.0;
  double t_max = 10.0;
  int points = 101;
  Spacing spacing = Spacing::Linear;
};

struct OracleSettings {
  bool enabled = true;
  std::size_t n = 100000;
  std::uint64_t seed = 1;
  double z_max = 5.0;
};

struct ExperimentConfig {
  ChannelKind channel = ChannelKind::FullTwelve;
  NoiseRates rates{0.0, 1.0, 1.0};
  std::string state = "bell-phi-plus";
  TimeGrid grid;
  double epsilon = 1e-6;
  OracleSettings oracle;
  // element pairs for the mixed dephasing time; empty means "from the state"
  std::set<ElementPair> support;
};

/// Parses "all" or a list like "12,13,24".
inline std::set<ElementPair> parse_support(std::string_view text) {
  if (text == "all") return all_off_diagonal_pairs();
  std::set<ElementPair> s;
  std::string item;
  std::istringstream is{std::string(text)};
  while (std::getline(is, item, ',')) {
    if (item.size() != 2 || item[0] < '1' || item[0] > '4' || item[1] < '1' ||
        item[1] > '4' || item[0] >= item[1])
      throw ConfigError("support pair '" + item + "' must be two digits ij with 1 <= i < j <= 4");
    s.insert({item[0] - '0', item[1] - '0'});
  }
  if (s.empty()) throw ConfigError("support must name at least one element pair");
  return s;
}

/// Fills cfg from a JSON document; keys absent from the document keep their
/// current values.
inline void apply_json(ExperimentConfig& cfg, const json& doc) {
  try {
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
    if (doc.contains("channel")) {
      const auto name = doc.at("channel").get<std::string>();
      const auto kind = parse_channel_kind(name);
      if (!kind) throw ConfigError("unknown channel '" + name + "'");
      cfg.channel = *kind;
    }
    if (doc.contains("rates")) {
      const auto& r = doc.at("rates");
      cfg.rates.collective = r.value("collective", cfg.rates.collective);
      cfg.rates.local_a = r.value("local_a", cfg.rates.local_a);
      cfg.rates.local_b = r.value("local_b", cfg.rates.local_b);
    }
    if (doc.contains("state")) cfg.state = doc.at("state").get<std::string>();
    if (doc.contains("grid")) {
      const auto& g = doc.at("grid");
      cfg.grid.t_min = g.value("t_min", cfg.grid.t_min);
      cfg.grid.t_max = g.value("t_max", cfg.grid.t_max);
      cfg.grid.points = g.value("points", cfg.grid.points);
      if (g.contains("spacing")) {
        const auto sp = g.at("spacing").get<std::string>();
        if (sp == "linear") cfg.grid.spacing = Spacing::Linear;
        else if (sp == "log") cfg.grid.spacing = Spacing::Log;
        else throw ConfigError("grid spacing must be 'linear' or 'log'");
      }
    }
    cfg.epsilon = doc.value("epsilon", cfg.epsilon);
    if (doc.contains("oracle")) {
      const auto& o = doc.at("oracle");
      cfg.oracle.enabled = o.value("enabled", cfg.oracle.enabled);
      cfg.oracle.n = o.value("n", cfg.oracle.n);
      cfg.oracle.seed = o.value("seed", cfg.oracle.seed);
      cfg.oracle.z_max = o.value("z_max", cfg.oracle.z_max);
    }
    if (doc.contains("support")) {
      const auto& s = doc.at("support");
      cfg.support = s.is_string() ? parse_support(s.get<std::string>())
                                  : parse_support([&] {
                                      std::string joined;
                                      for (const auto& p : s)
                                        joined += (joined.empty() ? "" : ",") +
                                                  p.get<std::string>();
                                      return joined;
                                    }());
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad configuration value: ") + e.what());
  }
}

inline void check(const ExperimentConfig& cfg) {
  try {
    cfg.rates.check();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const auto& g = cfg.grid;
  if (!(g.t_min >= 0.0) || !std::isfinite(g.t_max) || !(g.t_min < g.t_max))
    throw ConfigError("time grid needs 0 <= t_min < t_max");
  if (g.points < 2) throw ConfigError("time grid needs at least 2 points");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 0.1))
    throw ConfigError("epsilon must lie in (0, 0.1]");
  resolve_state(cfg.state);
}

/// Linear grid, or geometric grid. A log grid starting at t = 0 keeps 0 as
/// its first point and spaces the rest geometrically from t_max * 1e-4.
inline std::vector<double> make_grid(const TimeGrid& g) {
  std::vector<double> ts;
  const int n = g.points;
  if (g.spacing == Spacing::Linear) {
    for (int k = 0; k < n; ++k)
      ts.push_back(k + 1 == n ? g.t_max : g.t_min + (g.t_max - g.t_min) * k / (n - 1));
    return ts;
  }
  double lo = g.t_min;
  int geometric = n;
  if (lo == 0.0) {
    ts.push_back(0.0);
    lo = g.t_max * 1e-4;
    --geometric;
  }
  if (geometric == 1) {
    ts.push_back(g.t_max);
    return ts;
  }
  for (int k = 0; k < geometric; ++k)
    ts.push_back(k + 1 == geometric
                     ? g.t_max
                     : lo * std::pow(g.t_max / lo, static_cast<double>(k) / (geometric - 1)));
  return ts;
}

//=========================================================================
// Sweep rows and output
//=========================================================================

inline constexpr std::string_view kCsvHeader =
    "t,gamma_A,gamma_B,gamma,C,F,abs_sA12,abs_sB12,rho14_re,rho14_im,rho23_re,rho23_im";

struct SweepRow {
  double t = 0.0;
  double gamma_a = 1.0, gamma_b = 1.0, gamma = 1.0;
  double concurrence = 0.0;
  double fidelity = 0.0;
  double abs_sa12 = 0.0, abs_sb12 = 0.0;
  complex rho14, rho23;
};

/// Closed-form evolution on the configured grid.
inline std::vector<SweepRow> evolve_rows(const ExperimentConfig& cfg) {
  const PureState psi = resolve_state(cfg.state);
  const TwoQubitState rho0 = pure_density(psi);
  const NoiseRates eff = effective_rates(cfg.channel, cfg.rates);
  std::vector<SweepRow> rows;
  for (double t : make_grid(cfg.grid)) {
    const auto p = channel_params(t, eff);
    const auto rho = apply_closed_form(cfg.channel, p, rho0);
    rows.push_back({t, p.gamma_a, p.gamma_b, p.gamma, concurrence(rho).value,
                    fidelity_pure(psi, rho), std::abs(reduced_coherence(rho, Qubit::A)),
                    std::abs(reduced_coherence(rho, Qubit::B)), rho.element(1, 4),
                    rho.element(2, 3)});
  }
  return rows;
}

/// Shortest representation that round-trips a double (17 significant digits).
inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    bool first = true;
    for (double v : {r.t, r.gamma_a, r.gamma_b, r.gamma, r.concurrence, r.fidelity,
                     r.abs_sa12, r.abs_sb12, r.rho14.real(), r.rho14.imag(),
                     r.rho23.real(), r.rho23.imag()})
      os << (std::exchange(first, false) ? "" : ",") << format_number(v);
    os << '\n';
  }
}

namespace detail {
inline json time_value(double v) {
  return std::isfinite(v) ? json(v) : json("inf");
}
inline json time_value(const std::optional<double>& v) {
  return v ? time_value(*v) : json("undefined");
}
inline std::string pair_key(const ElementPair& p) {
  return std::to_string(p.first) + std::to_string(p.second);
}
}  // namespace detail

inline json timescales_json(const Timescales& ts) {
  json j;
  j["tau_A"] = detail::time_value(ts.tau_a);
  j["tau_B"] = detail::time_value(ts.tau_b);
  j["tau_e"] = detail::time_value(ts.tau_e);
  j["tau"] = detail::time_value(ts.tau);
  json rates = json::object();
  for (const auto& [pr, g] : ts.rates) rates["Gamma_" + detail::pair_key(pr)] = g;
  j["Gamma_ij"] = rates;
  return j;
}

/// Summary block for an evolve run.
inline json evolve_summary(const ExperimentConfig& cfg) {
  const PureState psi = resolve_state(cfg.state);
  const TwoQubitState rho0 = pure_density(psi);
  const NoiseRates eff = effective_rates(cfg.channel, cfg.rates);
  const auto support = cfg.support.empty() ? coherence_support(rho0) : cfg.support;

  json j;
  j["channel"] = std::string(to_string(cfg.channel));
  j["rates"] = {{"collective", eff.collective}, {"local_a", eff.local_a},
                {"local_b", eff.local_b}};
  j["state"] = cfg.state;
  json amps = json::array();
  for (const auto& a : psi.amplitudes()) amps.push_back({a.real(), a.imag()});
  j["amplitudes"] = amps;
  json sup = json::array();
  for (const auto& p : support) sup.push_back(detail::pair_key(p));
  j["support"] = sup;
  j["timescales"] = timescales_json(timescales(eff, support));
  const double c0 = concurrence(rho0).value;
  j["initial_concurrence"] = c0;
  j["epsilon"] = cfg.epsilon;
  if (c0 <= cfg.epsilon) {
    j["disentanglement_time"] = "not entangled";
  } else {
    const auto dt = disentanglement_time(cfg.channel, eff, psi, cfg.epsilon);
    j["disentanglement_time"] = dt.time ? json(*dt.time) : json("no crossing");
  }
  return j;
}

//=========================================================================
// Oracle table
//=========================================================================

inline constexpr std::string_view kOracleHeader =
    "t,max_z,worst_element,C_mc,C_closed,C_stderr,pass";

inline std::string element_name(const oracle::WorstElement& w) {
  return "rho" + std::to_string(w.i) + std::to_string(w.j) + (w.imaginary ? "_im" : "_re");
}

inline void write_oracle_table(std::ostream& os, const oracle::OracleReport& rep) {
  os << kOracleHeader << '\n';
  for (const auto& r : rep.rows)
    os << format_number(r.t) << ',' << format_number(r.worst.z) << ','
       << element_name(r.worst) << ',' << format_number(r.concurrence_mc) << ','
       << format_number(r.concurrence_closed) << ','
       << format_number(r.concurrence_stderr) << ',' << (r.pass ? "true" : "false")
       << '\n';
}

/// Ensemble comparison for the configured experiment. Fields the channel
/// does not couple to are switched off in both the simulation and the
/// closed form.
inline oracle::OracleReport run_oracle(const ExperimentConfig& cfg, unsigned threads = 0) {
  const auto rho0 = pure_density(resolve_state(cfg.state));
  return oracle::oracle_report(rho0, effective_rates(cfg.channel, cfg.rates),
                               make_grid(cfg.grid), cfg.oracle.n, cfg.oracle.seed,
                               cfg.oracle.z_max, threads);
}

}  // namespace dephasing::sweep

#endif  // DEPHASING_SWEEP_HPP
