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

// Monte Carlo ground truth for the dephasing channels.
//
// Each trajectory draws one realization of the three white-noise fields and
// evolves the state unitarily. The Hamiltonian is diagonal in the standard
// basis, so over [0, t] the only thing a trajectory needs is the three Wiener
// integrals
//
//   X   = mu * int B   ~ N(0, Gamma   t)
//   Y_A = mu * int b_A ~ N(0, Gamma_A t)
//   Y_B = mu * int b_B ~ N(0, Gamma_B t)
//
// and basis state k with spin signs (s_A, s_B) picks up the phase
//
//   phi_k = ((s_A + s_B) X + s_A Y_A + s_B Y_B) / 2.
//
// Sampling these directly is exact: there is no time-step error.

#ifndef DEPHASING_ORACLE_HPP
#define DEPHASING_ORACLE_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "dephasing/channels.hpp"
#include "dephasing/matrix.hpp"
#include "dephasing/metrics.hpp"
#include "dephasing/state.hpp"

namespace dephasing::oracle {

//=========================================================================
// Counter-based random streams
//=========================================================================

/// SplitMix64 stream keyed by (seed, trajectory index). Streams for distinct
/// indices are decorrelated by hashing, so any trajectory can be regenerated
/// on its own, in any order, on any thread.
class TrajectoryStream {
 public:
  using result_type = std::uint64_t;

  TrajectoryStream(std::uint64_t seed, std::uint64_t index)
      : state_(mix(mix(seed) ^ (index * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

//=========================================================================
// Single trajectories
//=========================================================================

/// Wiener integrals of the three fields for one trajectory.
struct FieldIntegrals {
  double collective = 0.0;  // X
  double local_a = 0.0;     // Y_A
  double local_b = 0.0;     // Y_B
};

/// Per-basis-state phases phi_1..phi_4.
using TrajectoryPhases = std::array<double, 4>;

inline TrajectoryPhases phases(const FieldIntegrals& w) {
  TrajectoryPhases phi{};
  for (int k = 1; k <= 4; ++k) {
    const BasisIndex b(k);
    const double sa = b.sign_a(), sb = b.sign_b();
    phi[b.offset()] = 0.5 * ((sa + sb) * w.collective + sa * w.local_a + sb * w.local_b);
  }
  return phi;
}

/// Draws the three Wiener integrals over [0, t] for trajectory `index`.
inline FieldIntegrals draw_fields(const NoiseRates& rates, double t,
                                  std::uint64_t seed, std::uint64_t index) {
  TrajectoryStream stream(seed, index);
  std::normal_distribution<double> normal;
  FieldIntegrals w;
  // always consume three draws so streams line up across rate settings
  const double zx = normal(stream), za = normal(stream), zb = normal(stream);
  w.collective = std::sqrt(rates.collective * t) * zx;
  w.local_a = std::sqrt(rates.local_a * t) * za;
  w.local_b = std::sqrt(rates.local_b * t) * zb;
  return w;
}

/// U rho U^dagger with U = diag(e^{i phi_k}).
inline Matrix4 conjugate_by_phases(const Matrix4& rho, const TrajectoryPhases& phi) {
  Matrix4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      out(i, j) = i == j ? rho(i, j) : rho(i, j) * std::polar(1.0, phi[i] - phi[j]);
  return out;
}

inline TwoQubitState sample_trajectory(const TwoQubitState& rho0, double t,
                                       const NoiseRates& rates, std::uint64_t seed,
                                       std::uint64_t index) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw DomainError("elapsed time must be finite and non-negative");
  rates.check();
  return TwoQubitState::trusted(
      conjugate_by_phases(rho0.matrix(), phases(draw_fields(rates, t, seed, index))));
}

inline TwoQubitState sample_trajectory(const PureState& psi0, double t,
                                       const NoiseRates& rates, std::uint64_t seed,
                                       std::uint64_t index) {
  return sample_trajectory(pure_density(psi0), t, rates, seed, index);
}

/// Fixed-step mode: accumulates independent Gaussian increments over each
/// interval of an increasing time grid starting at 0, giving correlated
/// phase paths for plotting. The marginal at every grid time has the same
/// law as draw_fields at that time.
inline std::vector<FieldIntegrals> sample_field_path(const NoiseRates& rates,
                                                     const std::vector<double>& times,
                                                     std::uint64_t seed,
                                                     std::uint64_t index) {
  rates.check();
  TrajectoryStream stream(seed, index);
  std::normal_distribution<double> normal;
  std::vector<FieldIntegrals> path;
  path.reserve(times.size());
  FieldIntegrals w;
  double prev = 0.0;
  for (double t : times) {
    if (!(t >= prev)) throw DomainError("path times must be non-decreasing and >= 0");
    const double dt = t - prev;
    const double zx = normal(stream), za = normal(stream), zb = normal(stream);
    w.collective += std::sqrt(rates.collective * dt) * zx;
    w.local_a += std::sqrt(rates.local_a * dt) * za;
    w.local_b += std::sqrt(rates.local_b * dt) * zb;
    path.push_back(w);
    prev = t;
  }
  return path;
}

//=========================================================================
// Ensembles
//=========================================================================

/// Standard error of the real and imaginary part of one element.
struct ElementError {
  double re = 0.0;
  double im = 0.0;
};

using ErrorMatrix = std::array<std::array<ElementError, 4>, 4>;

struct TrajectoryEnsemble {
  std::size_t n = 0;
  Matrix4 mean;
  ErrorMatrix std_error{};
  // means over contiguous, equally sized index blocks (batch means)
  std::vector<Matrix4> batch_means;

  TwoQubitState state() const { return TwoQubitState::trusted(mean); }
  const ElementError& standard_error(std::size_t i, std::size_t j) const {
    return std_error[i][j];
  }
};

inline constexpr std::size_t kMinTrajectories = 100;
inline constexpr std::size_t kBatches = 20;

namespace detail {

struct Accumulator {
  Matrix4 sum;
  std::array<double, 16> sq_re{};
  std::array<double, 16> sq_im{};

  void add(const Matrix4& m) {
    sum += m;
    for (std::size_t k = 0; k < 16; ++k) {
      sq_re[k] += m.data()[k].real() * m.data()[k].real();
      sq_im[k] += m.data()[k].imag() * m.data()[k].imag();
    }
  }
  void merge(const Accumulator& o) {
    sum += o.sum;
    for (std::size_t k = 0; k < 16; ++k) {
      sq_re[k] += o.sq_re[k];
      sq_im[k] += o.sq_im[k];
    }
  }
};

}  // namespace detail

/// Mean and standard error over n trajectories with indices 0..n-1.
/// Moments are accumulated for the deviation from rho0, which removes the
/// cancellation in sum(x^2)/n - mean^2 for elements the noise barely moves.
/// Trajectories are split into a fixed number of contiguous batches, each
/// summed sequentially and then combined in batch order, so the result is
/// bit-identical for any thread count.
inline TrajectoryEnsemble ensemble_average(const TwoQubitState& rho0, double t,
                                           const NoiseRates& rates, std::size_t n,
                                           std::uint64_t seed, unsigned threads = 0) {
  if (n < kMinTrajectories)
    throw DomainError("ensemble needs at least " + std::to_string(kMinTrajectories) +
                      " trajectories for meaningful statistics, got " +
                      std::to_string(n));
  if (!(t >= 0.0) || !std::isfinite(t))
    throw DomainError("elapsed time must be finite and non-negative");
  rates.check();

  std::vector<detail::Accumulator> batches(kBatches);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t b; (b = next.fetch_add(1)) < kBatches;) {
      const std::size_t lo = n * b / kBatches, hi = n * (b + 1) / kBatches;
      for (std::size_t i = lo; i < hi; ++i)
        batches[b].add(conjugate_by_phases(rho0.matrix(),
                                           phases(draw_fields(rates, t, seed, i))) -
                       rho0.matrix());
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, kBatches);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }

  detail::Accumulator total;
  TrajectoryEnsemble ens;
  ens.n = n;
  for (std::size_t b = 0; b < kBatches; ++b) {
    total.merge(batches[b]);
    const double size = static_cast<double>(n * (b + 1) / kBatches - n * b / kBatches);
    ens.batch_means.push_back(rho0.matrix() + batches[b].sum * (1.0 / size));
  }
  const double nn = static_cast<double>(n);
  const Matrix4 shift_mean = total.sum * (1.0 / nn);
  ens.mean = rho0.matrix() + shift_mean;
  for (std::size_t k = 0; k < 16; ++k) {
    const complex m = shift_mean.data()[k];
    const double var_re = std::max(0.0, total.sq_re[k] / nn - m.real() * m.real());
    const double var_im = std::max(0.0, total.sq_im[k] / nn - m.imag() * m.imag());
    // unbiased sample variance, then the standard error of the mean
    ens.std_error[k / 4][k % 4] = {std::sqrt(var_re / (nn - 1.0)),
                                 std::sqrt(var_im / (nn - 1.0))};
  }
  return ens;
}

inline TrajectoryEnsemble ensemble_average(const PureState& psi0, double t,
                                           const NoiseRates& rates, std::size_t n,
                                           std::uint64_t seed, unsigned threads = 0) {
  return ensemble_average(pure_density(psi0), t, rates, n, seed, threads);
}

//=========================================================================
// Comparison against the closed form
//=========================================================================

/// |mc - exact| / stderr. Agreement within 1e-12 scores zero: elements the
/// noise cannot touch (populations, exact zeros) carry only round-off in both
/// the mean and the spread, and their ratio is meaningless. An element with
/// zero spread that disagrees by more than that scores infinity.
inline constexpr double kExactAgreement = 1e-12;

inline double z_score(double mc, double exact, double stderr_value) {
  const double diff = std::abs(mc - exact);
  if (diff <= kExactAgreement) return 0.0;
  if (stderr_value > 0.0) return diff / stderr_value;
  return std::numeric_limits<double>::infinity();
}

struct ElementZ {
  double re = 0.0;
  double im = 0.0;
};

struct WorstElement {
  int i = 1, j = 1;       // one-based
  bool imaginary = false;
  double z = 0.0;
};

struct OracleRow {
  double t = 0.0;
  Matrix4 monte_carlo;
  Matrix4 closed_form;
  ErrorMatrix std_error{};
  std::array<std::array<ElementZ, 4>, 4> z{};
  WorstElement worst;
  double concurrence_mc = 0.0;
  double concurrence_closed = 0.0;
  double concurrence_stderr = 0.0;  // from batch means
  bool pass = false;
};

struct OracleReport {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double z_max = 5.0;
  std::vector<OracleRow> rows;

  bool pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const OracleRow& r) { return r.pass; });
  }

  /// Worst element over all rows, with the time at which it occurred.
  std::pair<double, WorstElement> worst() const {
    std::pair<double, WorstElement> w{0.0, {1, 1, false, -1.0}};
    for (const auto& r : rows)
      if (r.worst.z > w.second.z) w = {r.t, r.worst};
    return w;
  }
};

/// Runs the ensemble at each grid time and scores it against the
/// twelve-operator closed form with the same rates. A row passes when every
/// element's real and imaginary z-score is at most z_max.
inline OracleReport oracle_report(const TwoQubitState& rho0, const NoiseRates& rates,
                                  const std::vector<double>& times, std::size_t n,
                                  std::uint64_t seed, double z_max = 5.0,
                                  unsigned threads = 0) {
  OracleReport rep;
  rep.n = n;
  rep.seed = seed;
  rep.z_max = z_max;
  for (double t : times) {
    const auto ens = ensemble_average(rho0, t, rates, n, seed, threads);
    OracleRow row;
    row.t = t;
    row.worst.z = -1.0;
    row.monte_carlo = ens.mean;
    row.std_error = ens.std_error;
    const auto exact = evolve(ChannelKind::FullTwelve, rates, t, rho0);
    row.closed_form = exact.matrix();
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        const complex mc = ens.mean(i, j), cf = exact(i, j);
        const auto& se = ens.std_error[i][j];
        auto& z = row.z[i][j];
        z.re = z_score(mc.real(), cf.real(), se.re);
        z.im = z_score(mc.imag(), cf.imag(), se.im);
        for (auto [value, imag] : {std::pair{z.re, false}, std::pair{z.im, true}})
          if (value > row.worst.z)
            row.worst = {static_cast<int>(i + 1), static_cast<int>(j + 1), imag, value};
      }
    row.concurrence_mc = concurrence(ens.state()).value;
    row.concurrence_closed = concurrence(exact).value;
    double s = 0.0, s2 = 0.0;
    for (const auto& bm : ens.batch_means) {
      const double c = concurrence(TwoQubitState::trusted(bm)).value;
      s += c;
      s2 += c * c;
    }
    const double b = static_cast<double>(ens.batch_means.size());
    const double var = std::max(0.0, (s2 - s * s / b) / (b - 1.0));
    row.concurrence_stderr = std::sqrt(var / b);
    row.pass = row.worst.z <= z_max;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace dephasing::oracle

#endif  // DEPHASING_ORACLE_HPP
