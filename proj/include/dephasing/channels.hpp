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

#ifndef DEPHASING_CHANNELS_HPP
#define DEPHASING_CHANNELS_HPP

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dephasing/matrix.hpp"
#include "dephasing/state.hpp"

namespace dephasing {

//=========================================================================
// Noise rates and time-dependent channel parameters
//=========================================================================

/// Dephasing rates (1/time) of the collective field and the two local
/// fields. The gyromagnetic ratio cancels from every observable and is not
/// represented.
struct NoiseRates {
  double collective = 0.0;  // Gamma,   T2   = 1/Gamma
  double local_a = 0.0;     // Gamma_A, T2^A = 1/Gamma_A
  double local_b = 0.0;     // Gamma_B, T2^B = 1/Gamma_B

  void check() const {
    for (auto [name, v] : {std::pair{"collective", collective},
                           std::pair{"local_a", local_a},
                           std::pair{"local_b", local_b}})
      if (!(v >= 0.0) || !std::isfinite(v))
        throw DomainError(std::string("rate ") + name +
                          " must be finite and non-negative");
  }

  // Phase relaxation times; infinite for a zero rate.
  double t2() const { return relaxation_time(collective); }
  double t2_a() const { return relaxation_time(local_a); }
  double t2_b() const { return relaxation_time(local_b); }

  static double relaxation_time(double rate) {
    return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
  }

  friend bool operator==(const NoiseRates&, const NoiseRates&) = default;
};

/// Kraus-operator coefficients at elapsed time t.
struct ChannelParams {
  double t = 0.0;
  double gamma_a = 1.0, omega_a = 0.0;
  double gamma_b = 1.0, omega_b = 0.0;
  double gamma = 1.0, omega1 = 0.0, omega2 = 0.0, omega3 = 0.0;
};

/// gamma_X = exp(-Gamma_X t / 2), omega_X = sqrt(1 - exp(-Gamma_X t)) for
/// the local fields; the collective field additionally produces
/// omega2 = -exp(-Gamma t) omega1 and
/// omega3 = sqrt((1 - exp(-Gamma t)) (1 - exp(-2 Gamma t))).
/// A zero rate yields exact identity factors.
inline ChannelParams channel_params(double t, const NoiseRates& rates) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw DomainError("elapsed time must be finite and non-negative");
  rates.check();

  ChannelParams p;
  p.t = t;
  const auto local = [t](double rate, double& gamma, double& omega) {
    if (rate == 0.0) return;
    gamma = std::exp(-0.5 * rate * t);
    omega = std::sqrt(-std::expm1(-rate * t));
  };
  local(rates.local_a, p.gamma_a, p.omega_a);
  local(rates.local_b, p.gamma_b, p.omega_b);

  if (rates.collective > 0.0) {
    const double x = rates.collective * t;
    const double one_minus_e1 = -std::expm1(-x);
    const double one_minus_e2 = -std::expm1(-2.0 * x);
    p.gamma = std::exp(-0.5 * x);
    p.omega1 = std::sqrt(one_minus_e1);
    p.omega2 = -std::exp(-x) * p.omega1;
    p.omega3 = std::sqrt(one_minus_e1 * one_minus_e2);
  }
  return p;
}

//=========================================================================
// Channel kinds
//=========================================================================

enum class ChannelKind {
  OneQubitA,      // local field on qubit A only, 2 operators
  OneQubitB,      // local field on qubit B only, 2 operators
  TwoQubitLocal,  // both local fields, 4 operators
  Collective,     // common field only, 3 operators
  FullTwelve,     // all three fields, 12 operators
};

inline constexpr std::array<ChannelKind, 5> kAllChannelKinds = {
    ChannelKind::OneQubitA, ChannelKind::OneQubitB, ChannelKind::TwoQubitLocal,
    ChannelKind::Collective, ChannelKind::FullTwelve};

inline std::string_view to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::OneQubitA: return "A";
    case ChannelKind::OneQubitB: return "B";
    case ChannelKind::TwoQubitLocal: return "AB";
    case ChannelKind::Collective: return "D";
    case ChannelKind::FullTwelve: return "full";
  }
  return "?";
}

/// Accepts the short names (A, B, AB, D, full) and long aliases.
inline std::optional<ChannelKind> parse_channel_kind(std::string_view s) {
  if (s == "A" || s == "one-qubit-a") return ChannelKind::OneQubitA;
  if (s == "B" || s == "one-qubit-b") return ChannelKind::OneQubitB;
  if (s == "AB" || s == "local" || s == "two-qubit-local")
    return ChannelKind::TwoQubitLocal;
  if (s == "D" || s == "collective") return ChannelKind::Collective;
  if (s == "full" || s == "twelve" || s == "full-twelve")
    return ChannelKind::FullTwelve;
  return std::nullopt;
}

inline std::size_t operator_count(ChannelKind k) {
  switch (k) {
    case ChannelKind::OneQubitA:
    case ChannelKind::OneQubitB: return 2;
    case ChannelKind::TwoQubitLocal: return 4;
    case ChannelKind::Collective: return 3;
    case ChannelKind::FullTwelve: return 12;
  }
  return 0;
}

/// Rates with the fields a channel kind does not couple to set to zero.
inline NoiseRates effective_rates(ChannelKind k, NoiseRates r) {
  switch (k) {
    case ChannelKind::OneQubitA: r.collective = r.local_b = 0.0; break;
    case ChannelKind::OneQubitB: r.collective = r.local_a = 0.0; break;
    case ChannelKind::TwoQubitLocal: r.collective = 0.0; break;
    case ChannelKind::Collective: r.local_a = r.local_b = 0.0; break;
    case ChannelKind::FullTwelve: break;
  }
  return r;
}

//=========================================================================
// Kraus operators
//=========================================================================

namespace kraus {

inline Matrix4 e1(const ChannelParams& p) {
  return tensor(Matrix2{1.0, 0.0, 0.0, p.gamma_a}, pauli::identity());
}
inline Matrix4 e2(const ChannelParams& p) {
  return tensor(Matrix2{0.0, 0.0, 0.0, p.omega_a}, pauli::identity());
}
inline Matrix4 f1(const ChannelParams& p) {
  return tensor(pauli::identity(), Matrix2{1.0, 0.0, 0.0, p.gamma_b});
}
inline Matrix4 f2(const ChannelParams& p) {
  return tensor(pauli::identity(), Matrix2{0.0, 0.0, 0.0, p.omega_b});
}
inline Matrix4 d1(const ChannelParams& p) {
  return Matrix4::diagonal({p.gamma, 1.0, 1.0, p.gamma});
}
inline Matrix4 d2(const ChannelParams& p) {
  return Matrix4::diagonal({p.omega1, 0.0, 0.0, p.omega2});
}
inline Matrix4 d3(const ChannelParams& p) {
  return Matrix4::diagonal({0.0, 0.0, 0.0, p.omega3});
}

}  // namespace kraus

/// max_ij |(sum_mu K_mu^dagger K_mu - I)_ij|.
inline double completeness_residual(const std::vector<Matrix4>& ops) {
  Matrix4 sum;
  for (const auto& k : ops) sum += k.adjoint() * k;
  return max_abs_diff(sum, Matrix4::identity());
}

/// Ordered Kraus operator set with its completeness certificate.
class KrausChannel {
 public:
  static constexpr double kCompletenessTolerance = 1e-12;

  /// Throws Error when sum K^dagger K deviates from I by more than 1e-12.
  KrausChannel(ChannelKind kind, std::vector<Matrix4> operators)
      : kind_(kind),
        operators_(std::move(operators)),
        residual_(dephasing::completeness_residual(operators_)) {
    if (!(residual_ <= kCompletenessTolerance)) {
      std::ostringstream os;
      os << "Kraus set for channel " << to_string(kind_)
         << " is not trace preserving: completeness residual " << residual_;
      throw Error(os.str());
    }
  }

  ChannelKind kind() const { return kind_; }
  const std::vector<Matrix4>& operators() const { return operators_; }
  double completeness_residual() const { return residual_; }

 private:
  ChannelKind kind_;
  std::vector<Matrix4> operators_;
  double residual_;
};

inline KrausChannel build_kraus(ChannelKind kind, const ChannelParams& p) {
  using namespace kraus;
  std::vector<Matrix4> ops;
  switch (kind) {
    case ChannelKind::OneQubitA: ops = {e1(p), e2(p)}; break;
    case ChannelKind::OneQubitB: ops = {f1(p), f2(p)}; break;
    case ChannelKind::TwoQubitLocal:
      ops = {e1(p) * f1(p), e1(p) * f2(p), e2(p) * f1(p), e2(p) * f2(p)};
      break;
    case ChannelKind::Collective: ops = {d1(p), d2(p), d3(p)}; break;
    case ChannelKind::FullTwelve: {
      const std::array<Matrix4, 2> fs{f1(p), f2(p)};
      const std::array<Matrix4, 2> es{e1(p), e2(p)};
      const std::array<Matrix4, 3> ds{d1(p), d2(p), d3(p)};
      for (const auto& f : fs)
        for (const auto& e : es)
          for (const auto& d : ds) ops.push_back(f * e * d);
      break;
    }
  }
  return KrausChannel(kind, std::move(ops));
}

/// Operator-sum action rho -> sum_mu K_mu rho K_mu^dagger.
inline TwoQubitState apply(const KrausChannel& ch, const TwoQubitState& rho) {
  Matrix4 out;
  for (const auto& k : ch.operators()) out += k * rho.matrix() * k.adjoint();
  return TwoQubitState::trusted(out);
}

//=========================================================================
// Closed-form solutions
//=========================================================================

/// Real symmetric elementwise damping factors rho_ij(t) = mask_ij rho_ij(0).
using DampingMask = std::array<std::array<double, 4>, 4>;

inline DampingMask damping_mask(ChannelKind kind, const ChannelParams& p) {
  DampingMask m{};
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      const BasisIndex bi(i), bj(j);
      const bool flip_a = bi.sign_a() != bj.sign_a();
      const bool flip_b = bi.sign_b() != bj.sign_b();
      // collective phase difference in units of the single-flip phase
      const int collective =
          std::abs((bi.sign_a() + bi.sign_b()) - (bj.sign_a() + bj.sign_b())) / 2;
      const double local_a = flip_a ? p.gamma_a : 1.0;
      const double local_b = flip_b ? p.gamma_b : 1.0;
      const double common = collective == 0   ? 1.0
                            : collective == 1 ? p.gamma
                                              : std::pow(p.gamma, 4);
      double f = 1.0;
      switch (kind) {
        case ChannelKind::OneQubitA: f = local_a; break;
        case ChannelKind::OneQubitB: f = local_b; break;
        case ChannelKind::TwoQubitLocal: f = local_a * local_b; break;
        case ChannelKind::Collective: f = common; break;
        case ChannelKind::FullTwelve: f = local_a * local_b * common; break;
      }
      m[i - 1][j - 1] = f;
    }
  return m;
}

inline TwoQubitState apply_closed_form(ChannelKind kind, const ChannelParams& p,
                                       const TwoQubitState& rho) {
  const auto mask = damping_mask(kind, p);
  Matrix4 out = rho.matrix();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out(i, j) *= mask[i][j];
  return TwoQubitState::trusted(out);
}

/// Closed-form state at time t; only the rates the channel couples to matter.
inline TwoQubitState evolve(ChannelKind kind, const NoiseRates& rates, double t,
                            const TwoQubitState& rho) {
  return apply_closed_form(kind, channel_params(t, rates), rho);
}

}  // namespace dephasing

#endif  // DEPHASING_CHANNELS_HPP
