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

#ifndef DEPHASING_STATE_HPP
#define DEPHASING_STATE_HPP

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "dephasing/linalg.hpp"
#include "dephasing/matrix.hpp"

namespace dephasing {

namespace tolerance {
inline constexpr double kNorm = 1e-12;
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kPsd = -1e-10;
}  // namespace tolerance

//=========================================================================
// Validation
//=========================================================================

enum class ValidationFailure { None, NonFinite, Hermiticity, Trace, Positivity };

inline const char* to_string(ValidationFailure f) {
  switch (f) {
    case ValidationFailure::None: return "none";
    case ValidationFailure::NonFinite: return "non-finite";
    case ValidationFailure::Hermiticity: return "hermiticity";
    case ValidationFailure::Trace: return "trace";
    case ValidationFailure::Positivity: return "positivity";
  }
  return "unknown";
}

struct ValidationReport {
  double hermiticity_residual = 0.0;  // max |m_ij - conj(m_ji)|
  double trace_residual = 0.0;        // |Tr m - 1|
  double min_eigenvalue = 0.0;
  ValidationFailure failure = ValidationFailure::None;

  bool ok() const { return failure == ValidationFailure::None; }

  std::string describe() const {
    std::ostringstream os;
    os.precision(3);
    os << "validation " << (ok() ? "passed" : "failed") << " ("
       << to_string(failure) << "): hermiticity residual "
       << hermiticity_residual << ", trace residual " << trace_residual
       << ", min eigenvalue " << min_eigenvalue;
    return os.str();
  }
};

/// Checks the density-matrix invariants on an arbitrary matrix. Never throws
/// and never modifies its argument; the first violated invariant (in the
/// order finite, Hermitian, trace, positivity) is reported.
template <std::size_t N>
ValidationReport validate(const Matrix<N>& m) {
  ValidationReport rep;
  if (!all_finite(m)) {
    rep.failure = ValidationFailure::NonFinite;
    rep.hermiticity_residual = rep.trace_residual = NAN;
    rep.min_eigenvalue = NAN;
    return rep;
  }
  rep.hermiticity_residual = max_abs_diff(m, m.adjoint());
  rep.trace_residual = std::abs(m.trace() - 1.0);
  rep.min_eigenvalue = eigvalsh(m)[0];
  if (rep.hermiticity_residual > tolerance::kHermitian)
    rep.failure = ValidationFailure::Hermiticity;
  else if (rep.trace_residual > tolerance::kTrace)
    rep.failure = ValidationFailure::Trace;
  else if (rep.min_eigenvalue < tolerance::kPsd)
    rep.failure = ValidationFailure::Positivity;
  return rep;
}

//=========================================================================
// States
//=========================================================================

/// Normalized two-qubit pure state a1|1> + a2|2> + a3|3> + a4|4>.
class PureState {
 public:
  using Amplitudes = std::array<complex, 4>;

  /// Throws ValidationError unless sum |a_i|^2 = 1 within 1e-12.
  explicit PureState(const Amplitudes& a) : a_(a) {
    const double deficit = std::abs(norm_squared(a) - 1.0);
    if (deficit > tolerance::kNorm) {
      std::ostringstream os;
      os.precision(3);
      os << "pure state is not normalized: |sum |a_i|^2 - 1| = " << deficit;
      throw ValidationError(os.str());
    }
  }

  /// Rescales arbitrary non-zero amplitudes to unit norm.
  static PureState normalized(Amplitudes a) {
    const double n = std::sqrt(norm_squared(a));
    if (!(n > 0.0) || !std::isfinite(n))
      throw ValidationError("cannot normalize a zero or non-finite amplitude vector");
    for (auto& x : a) x /= n;
    return PureState(a);
  }

  static PureState basis(BasisIndex k) {
    Amplitudes a{};
    a[k.offset()] = 1.0;
    return PureState(a);
  }

  const complex& operator[](std::size_t i) const { return a_[i]; }
  const Amplitudes& amplitudes() const { return a_; }

  static double norm_squared(const Amplitudes& a) {
    double s = 0.0;
    for (const auto& x : a) s += std::norm(x);
    return s;
  }

 private:
  Amplitudes a_;
};

/// Validated density matrix of dimension N (4 for two qubits, 2 for a
/// reduced single-qubit state).
template <std::size_t N>
class DensityMatrix {
 public:
  /// Throws ValidationError naming the violated invariant.
  explicit DensityMatrix(const Matrix<N>& m) : m_(m) {
    const auto rep = validate(m);
    if (!rep.ok()) throw ValidationError(rep.describe());
  }

  /// Skips validation. For results of operations that preserve the
  /// invariants exactly (CPTP maps, partial traces of valid states).
  static DensityMatrix trusted(const Matrix<N>& m) {
    return DensityMatrix(m, Trusted{});
  }

  const Matrix<N>& matrix() const { return m_; }
  const complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  /// One-based element access, rho_ij as written in the literature.
  const complex& element(int i, int j) const {
    return m_(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
  }

 private:
  struct Trusted {};
  DensityMatrix(const Matrix<N>& m, Trusted) : m_(m) {}
  Matrix<N> m_;
};

using TwoQubitState = DensityMatrix<4>;
using QubitState = DensityMatrix<2>;

/// |psi><psi|, rho_ij = a_i conj(a_j).
inline TwoQubitState pure_density(const PureState& psi) {
  Matrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return TwoQubitState::trusted(m);
}

/// Reduced state of the kept qubit. keep=A gives s^A with
/// s^A_12 = rho_13 + rho_24; keep=B gives s^B_12 = rho_12 + rho_34.
inline QubitState partial_trace(const TwoQubitState& rho, Qubit keep) {
  return QubitState::trusted(partial_trace(rho.matrix(), keep));
}

inline TwoQubitState tensor(const QubitState& a, const QubitState& b) {
  return TwoQubitState::trusted(tensor(a.matrix(), b.matrix()));
}

}  // namespace dephasing

#endif  // DEPHASING_STATE_HPP
