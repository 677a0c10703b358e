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

// Random generators and independent reference formulas shared by the tests.

#ifndef DEPHASING_TESTS_TEST_SUPPORT_HPP
#define DEPHASING_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>

#include "dephasing/dephasing.hpp"

namespace dephasing::testing {

using Rng = std::mt19937_64;

inline complex random_complex(Rng& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng)};
}

inline PureState random_pure_state(Rng& rng) {
  PureState::Amplitudes a;
  for (auto& x : a) x = random_complex(rng);
  return PureState::normalized(a);
}

/// Random amplitudes restricted to the listed one-based basis labels.
inline PureState random_supported_state(Rng& rng, std::initializer_list<int> labels) {
  PureState::Amplitudes a{};
  for (int k : labels) a[static_cast<std::size_t>(k - 1)] = random_complex(rng);
  return PureState::normalized(a);
}

template <std::size_t N>
Matrix<N> random_matrix(Rng& rng) {
  Matrix<N> m;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) m(r, c) = random_complex(rng);
  return m;
}

/// Random mixed state of the requested rank: normalized G G^dagger.
template <std::size_t N>
Matrix<N> random_density_matrix(Rng& rng, std::size_t rank = N) {
  Matrix<N> g = random_matrix<N>(rng);
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = rank; c < N; ++c) g(r, c) = 0.0;
  Matrix<N> rho = g * g.adjoint();
  return rho * (1.0 / rho.trace().real());
}

inline TwoQubitState random_two_qubit_state(Rng& rng, std::size_t rank = 4) {
  return TwoQubitState(random_density_matrix<4>(rng, rank));
}

/// Haar-ish random 2x2 unitary from Euler angles and a global phase.
inline Matrix2 random_unitary2(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  const double theta = u(rng) / 2, a = u(rng), b = u(rng), g = u(rng);
  const complex ph = std::polar(1.0, g);
  return Matrix2{ph * std::polar(std::cos(theta), a), ph * std::polar(std::sin(theta), b),
                 -ph * std::polar(std::sin(theta), -b), ph * std::polar(std::cos(theta), -a)};
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Wootters concurrence of an X state (non-zero entries only on the diagonal
/// and the anti-diagonal): 2 max(0, |r14| - sqrt(r22 r33), |r23| - sqrt(r11 r44)).
inline double x_state_concurrence(const Matrix4& rho) {
  const double a = std::abs(rho(0, 3)) - std::sqrt(rho(1, 1).real() * rho(2, 2).real());
  const double b = std::abs(rho(1, 2)) - std::sqrt(rho(0, 0).real() * rho(3, 3).real());
  return 2.0 * std::max({0.0, a, b});
}

/// Random valid X state.
inline Matrix4 random_x_state(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<double, 4> p{};
  for (auto& x : p) x = u(rng);
  const double s = p[0] + p[1] + p[2] + p[3];
  for (auto& x : p) x /= s;
  Matrix4 m = Matrix4::diagonal({p[0], p[1], p[2], p[3]});
  m(0, 3) = std::polar(u(rng) * std::sqrt(p[0] * p[3]), 2 * M_PI * u(rng));
  m(3, 0) = std::conj(m(0, 3));
  m(1, 2) = std::polar(u(rng) * std::sqrt(p[1] * p[2]), 2 * M_PI * u(rng));
  m(2, 1) = std::conj(m(1, 2));
  return m;
}

}  // namespace dephasing::testing

#endif  // DEPHASING_TESTS_TEST_SUPPORT_HPP
