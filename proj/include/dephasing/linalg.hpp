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

#ifndef DEPHASING_LINALG_HPP
#define DEPHASING_LINALG_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "dephasing/matrix.hpp"

namespace dephasing {

//=========================================================================
// Jacobi methods for small Hermitian / general complex matrices
//=========================================================================

namespace detail {

// Unitary 2x2 rotation [u, w] -> [c u - s e w, s u + c e w] that zeroes the
// off-diagonal entry of the Hermitian block [[app, apq], [conj(apq), aqq]].
// e = conj(apq)/|apq| removes the phase, (c, s) is the classic real Jacobi
// rotation.
struct JacobiRotation {
  double c = 1.0;
  double s = 0.0;
  complex e = 1.0;
};

inline JacobiRotation jacobi_rotation(double app, double aqq, complex apq) {
  const double mag = std::abs(apq);
  JacobiRotation rot;
  if (mag == 0.0) return rot;
  rot.e = std::conj(apq) / mag;
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  rot.c = 1.0 / std::sqrt(t * t + 1.0);
  rot.s = t * rot.c;
  return rot;
}

// Right-multiply columns p, q of m by the rotation.
template <std::size_t N>
void rotate_columns(Matrix<N>& m, std::size_t p, std::size_t q,
                    const JacobiRotation& rot) {
  for (std::size_t r = 0; r < N; ++r) {
    const complex u = m(r, p);
    const complex w = rot.e * m(r, q);
    m(r, p) = rot.c * u - rot.s * w;
    m(r, q) = rot.s * u + rot.c * w;
  }
}

// Left-multiply rows p, q of m by the adjoint rotation.
template <std::size_t N>
void rotate_rows_adjoint(Matrix<N>& m, std::size_t p, std::size_t q,
                         const JacobiRotation& rot) {
  for (std::size_t c = 0; c < N; ++c) {
    const complex u = m(p, c);
    const complex w = std::conj(rot.e) * m(q, c);
    m(p, c) = rot.c * u - rot.s * w;
    m(q, c) = rot.s * u + rot.c * w;
  }
}

template <std::size_t N>
double off_diagonal_norm(const Matrix<N>& m) {
  double s = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c)
      if (r != c) s += std::norm(m(r, c));
  return std::sqrt(s);
}

}  // namespace detail

/// Eigen-decomposition of a Hermitian matrix: m = vectors * diag(values) *
/// vectors^dagger, eigenvalues ascending, eigenvectors as columns.
template <std::size_t N>
struct HermitianEigen {
  std::array<double, N> values{};
  Matrix<N> vectors;
  int sweeps = 0;
};

/// Cyclic complex Jacobi iteration. Only the Hermitian part of the input is
/// used. Converges when the off-diagonal Frobenius norm drops below
/// tolerance * max(1, ||m||_F).
template <std::size_t N>
HermitianEigen<N> eigh(const Matrix<N>& m, double tolerance = 1e-12) {
  Matrix<N> a = 0.5 * (m + m.adjoint());
  Matrix<N> v = Matrix<N>::identity();

  double scale = 0.0;
  for (const auto& z : a.data()) scale += std::norm(z);
  scale = std::max(1.0, std::sqrt(scale));

  HermitianEigen<N> out;
  constexpr int kMaxSweeps = 64;
  while (out.sweeps < kMaxSweeps) {
    const double off = detail::off_diagonal_norm(a);
    if (off == 0.0) break;
    // one polishing sweep once the tolerance is met
    const bool last = off <= tolerance * scale;
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) {
        if (a(p, q) == 0.0) continue;
        const auto rot =
            detail::jacobi_rotation(a(p, p).real(), a(q, q).real(), a(p, q));
        detail::rotate_columns(a, p, q, rot);
        detail::rotate_rows_adjoint(a, p, q, rot);
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        detail::rotate_columns(v, p, q, rot);
      }
    ++out.sweeps;
    if (last) break;
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

template <std::size_t N>
std::array<double, N> eigvalsh(const Matrix<N>& m) {
  return eigh(m).values;
}

/// Singular values (descending) by one-sided Hestenes-Jacobi. Zero singular
/// values come out at the level of eps * ||m||, not sqrt(eps).
template <std::size_t N>
std::array<double, N> singular_values(const Matrix<N>& m) {
  Matrix<N> a = m;
  constexpr int kMaxSweeps = 64;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) {
        double alpha = 0.0, beta = 0.0;
        complex gamma = 0.0;
        for (std::size_t r = 0; r < N; ++r) {
          alpha += std::norm(a(r, p));
          beta += std::norm(a(r, q));
          gamma += std::conj(a(r, p)) * a(r, q);
        }
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        detail::rotate_columns(a, p, q,
                               detail::jacobi_rotation(alpha, beta, gamma));
      }
    if (!rotated) break;
  }
  std::array<double, N> sv{};
  for (std::size_t c = 0; c < N; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < N; ++r) s += std::norm(a(r, c));
    sv[c] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

/// Principal square root of a Hermitian PSD matrix. Eigenvalues below
/// rank_tolerance * max eigenvalue are treated as exact zeros.
template <std::size_t N>
Matrix<N> sqrt_psd(const Matrix<N>& m, double rank_tolerance = 64.0 *
                                           std::numeric_limits<double>::epsilon()) {
  const auto eig = eigh(m);
  const double top = std::max(0.0, eig.values[N - 1]);
  std::array<complex, N> root{};
  for (std::size_t k = 0; k < N; ++k)
    root[k] = eig.values[k] > rank_tolerance * top ? std::sqrt(eig.values[k]) : 0.0;
  return eig.vectors * Matrix<N>::diagonal(root) * eig.vectors.adjoint();
}

}  // namespace dephasing

#endif  // DEPHASING_LINALG_HPP
