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

#ifndef DEPHASING_METRICS_HPP
#define DEPHASING_METRICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dephasing/channels.hpp"
#include "dephasing/linalg.hpp"
#include "dephasing/matrix.hpp"
#include "dephasing/state.hpp"

namespace dephasing {

//=========================================================================
// Concurrence
//=========================================================================

/// sigma_y (x) sigma_y in the standard basis.
inline Matrix4 spin_flip() { return tensor(pauli::y(), pauli::y()); }

/// (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y), conjugation taken in the
/// standard basis.
inline Matrix4 spin_flipped(const Matrix4& rho) {
  const Matrix4 yy = spin_flip();
  return yy * rho.conj() * yy;
}

struct ConcurrenceResult {
  double value = 0.0;
  // eigenvalues of rho * spin_flipped(rho), descending, before clamping
  std::array<double, 4> lambdas{};
};

/// Wootters concurrence max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)).
///
/// The square roots sqrt(l_i) are obtained directly as the singular values of
/// Z = sqrt(rho) (sigma_y (x) sigma_y) sqrt(rho)^*. Since
/// Z Z^dagger = sqrt(rho) rho~ sqrt(rho), which is similar to rho rho~, this
/// stays on Hermitian/unitary machinery, and exact-zero l_i come out at
/// eps level rather than sqrt(eps) level.
inline ConcurrenceResult concurrence(const TwoQubitState& rho) {
  const Matrix4 root = sqrt_psd(rho.matrix());
  const auto sv = singular_values(root * spin_flip() * root.conj());
  ConcurrenceResult r;
  for (std::size_t i = 0; i < 4; ++i) r.lambdas[i] = sv[i] * sv[i];
  r.value = std::clamp(sv[0] - sv[1] - sv[2] - sv[3], 0.0, 1.0);
  return r;
}

/// Eigenvalues (descending, unclamped) of the Hermitian matrix
/// sqrt(rho) rho~ sqrt(rho). Independent second route for the lambdas.
inline std::array<double, 4> concurrence_lambdas_hermitian(const TwoQubitState& rho) {
  const Matrix4 root = sqrt_psd(rho.matrix());
  auto l = eigvalsh(root * spin_flipped(rho.matrix()) * root);
  std::reverse(l.begin(), l.end());
  return l;
}

/// Concurrence from the Hermitian eigenvalue route with negative lambdas
/// clamped at zero (those below -1e-10 indicate an invalid state).
inline double concurrence_from_lambdas(const std::array<double, 4>& l) {
  std::array<double, 4> root{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (l[i] < tolerance::kPsd)
      throw ValidationError("negative eigenvalue in concurrence spectrum");
    root[i] = std::sqrt(std::max(0.0, l[i]));
  }
  std::sort(root.begin(), root.end(), std::greater<>());
  return std::max(0.0, root[0] - root[1] - root[2] - root[3]);
}

/// 2 |a1 a4 - a2 a3|.
inline double pure_concurrence(const PureState& psi) {
  return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

//=========================================================================
// Fidelity and coherence
//=========================================================================

/// <psi| rho_out |psi>. Only meaningful for a pure input state.
inline double fidelity_pure(const PureState& psi, const TwoQubitState& rho_out) {
  complex f = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      f += std::conj(psi[i]) * rho_out(i, j) * psi[j];
  return f.real();
}

/// Off-diagonal element of the reduced state: s^A_12 = rho_13 + rho_24 or
/// s^B_12 = rho_12 + rho_34.
inline complex reduced_coherence(const TwoQubitState& rho, Qubit qubit) {
  return partial_trace(rho, qubit)(0, 1);
}

//=========================================================================
// Timescales
//=========================================================================

/// Unordered off-diagonal element pair (i, j), one-based with i < j.
using ElementPair = std::pair<int, int>;

inline std::set<ElementPair> all_off_diagonal_pairs() {
  std::set<ElementPair> s;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) s.insert({i, j});
  return s;
}

/// Pairs (i, j), i < j, whose element exceeds threshold in modulus.
inline std::set<ElementPair> coherence_support(const TwoQubitState& rho,
                                               double threshold = 1e-15) {
  std::set<ElementPair> s;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      if (std::abs(rho.element(i, j)) > threshold) s.insert({i, j});
  return s;
}

/// Decay rates of the two-qubit-local channel: rho_ij(t) = e^{-Gamma_ij t}
/// rho_ij(0) with Gamma_12 = Gamma_34 = Gamma_B/2, Gamma_13 = Gamma_24 =
/// Gamma_A/2 and Gamma_14 = Gamma_23 = (Gamma_A + Gamma_B)/2.
inline std::map<ElementPair, double> element_decay_rates(const NoiseRates& r) {
  return {{{1, 2}, r.local_b / 2},         {{3, 4}, r.local_b / 2},
          {{1, 3}, r.local_a / 2},         {{2, 4}, r.local_a / 2},
          {{1, 4}, (r.local_a + r.local_b) / 2},
          {{2, 3}, (r.local_a + r.local_b) / 2}};
}

struct Timescales {
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  double tau_a = kInf;  // 2 / Gamma_A
  double tau_b = kInf;  // 2 / Gamma_B
  // 1/tau_e = 1/tau_a + 1/tau_b; empty when both local rates vanish
  std::optional<double> tau_e;
  // slowest 1/Gamma_ij over the declared support; empty for empty support
  std::optional<double> tau;
  std::map<ElementPair, double> rates;
};

inline Timescales timescales(const NoiseRates& rates,
                             const std::set<ElementPair>& support) {
  rates.check();
  Timescales ts;
  if (rates.local_a > 0.0) ts.tau_a = 2.0 / rates.local_a;
  if (rates.local_b > 0.0) ts.tau_b = 2.0 / rates.local_b;
  const double inv_e = rates.local_a / 2.0 + rates.local_b / 2.0;
  if (inv_e > 0.0) ts.tau_e = 1.0 / inv_e;
  ts.rates = element_decay_rates(rates);
  for (const auto& pr : support) {
    const auto it = ts.rates.find(pr);
    if (it == ts.rates.end())
      throw DomainError("support pair must satisfy 1 <= i < j <= 4");
    const double tau_ij = it->second > 0.0 ? 1.0 / it->second : Timescales::kInf;
    ts.tau = std::max(ts.tau.value_or(0.0), tau_ij);
  }
  return ts;
}

//=========================================================================
// Disentanglement time
//=========================================================================

struct DisentanglementTime {
  // empty: the concurrence never drops below epsilon
  std::optional<double> time;
  double epsilon = 0.0;
};

/// First time at which C(rho(t)) < epsilon, by a logarithmic scan followed by
/// bisection down to rel_tolerance. The scan does not assume C(t) is
/// monotone.
inline DisentanglementTime disentanglement_time(ChannelKind kind,
                                                const NoiseRates& rates,
                                                const PureState& psi0,
                                                double epsilon = 1e-6,
                                                double rel_tolerance = 1e-12) {
  if (!(epsilon > 0.0 && epsilon <= 0.1))
    throw DomainError("epsilon must lie in (0, 0.1]");
  const NoiseRates eff = effective_rates(kind, rates);
  eff.check();
  const TwoQubitState rho0 = pure_density(psi0);
  if (concurrence(rho0).value <= epsilon)
    throw DomainError("initial concurrence does not exceed epsilon");

  DisentanglementTime out{std::nullopt, epsilon};
  const double top = std::max({eff.collective, eff.local_a, eff.local_b});
  if (top == 0.0) return out;
  const double slowest = 1.0 / std::min({eff.collective > 0 ? eff.collective : top,
                                         eff.local_a > 0 ? eff.local_a : top,
                                         eff.local_b > 0 ? eff.local_b : top});
  // every decaying factor is below epsilon^2 * e^-20 by the horizon
  const double horizon = slowest * (4.0 * std::log(1.0 / epsilon) + 40.0);
  const auto c_at = [&](double t) { return concurrence(evolve(kind, eff, t, rho0)).value; };

  constexpr int kScanPoints = 512;
  const double first = horizon * 1e-12;
  const double ratio = std::pow(horizon / first, 1.0 / (kScanPoints - 1));
  double lo = 0.0, hi = -1.0, t = first;
  for (int k = 0; k < kScanPoints; ++k, t *= ratio) {
    if (c_at(t) < epsilon) {
      hi = t;
      break;
    }
    lo = t;
  }
  if (hi < 0.0) return out;
  while (hi - lo > rel_tolerance * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (c_at(mid) < epsilon ? hi : lo) = mid;
  }
  out.time = hi;
  return out;
}

}  // namespace dephasing

#endif  // DEPHASING_METRICS_HPP
