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

#ifndef DEPHASING_MATRIX_HPP
#define DEPHASING_MATRIX_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace dephasing {

using complex = std::complex<double>;

//=========================================================================
// Errors
//=========================================================================

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input violates a state invariant (norm, trace, Hermiticity, positivity).
struct ValidationError : Error {
  using Error::Error;
};

// Shape of runtime-sized input does not match the expected dimension.
struct ShapeError : Error {
  using Error::Error;
};

// Argument outside the domain of a function (negative time, bad rate).
struct DomainError : Error {
  using Error::Error;
};

//=========================================================================
// Fixed-size complex matrices
//=========================================================================

template <std::size_t N>
concept QubitDimension = (N == 2 || N == 4);

/// Dense row-major complex matrix of exact size N x N (N = 2 or 4).
template <std::size_t N>
  requires QubitDimension<N>
class Matrix {
 public:
  static constexpr std::size_t dim = N;

  constexpr Matrix() = default;

  /// Row-major initializer; missing trailing entries are zero.
  Matrix(std::initializer_list<complex> entries) {
    if (entries.size() > N * N)
      throw ShapeError("matrix initializer has " +
                       std::to_string(entries.size()) + " entries, expected " +
                       std::to_string(N * N));
    std::copy(entries.begin(), entries.end(), data_.begin());
  }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const std::array<complex, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  complex& operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
  const complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * N + c];
  }

  const std::array<complex, N * N>& data() const { return data_; }

  Matrix adjoint() const {
    Matrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  Matrix transpose() const {
    Matrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) m(c, r) = (*this)(r, c);
    return m;
  }

  Matrix conj() const {
    Matrix m;
    for (std::size_t i = 0; i < N * N; ++i) m.data_[i] = std::conj(data_[i]);
    return m;
  }

  complex trace() const {
    complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(complex s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, complex s) { return a *= s; }
  friend Matrix operator*(complex s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const complex ark = a(r, k);
        if (ark == 0.0) continue;
        for (std::size_t c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
      }
    return m;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::array<complex, N * N> data_{};
};

using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;

/// Largest elementwise modulus of a - b.
template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < N * N; ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

template <std::size_t N>
bool all_finite(const Matrix<N>& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](const complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

template <std::size_t N>
std::string to_string(const Matrix<N>& a) {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t r = 0; r < N; ++r) {
    os << (r == 0 ? "[" : " ");
    for (std::size_t c = 0; c < N; ++c)
      os << (c ? ", " : "") << a(r, c).real() << (a(r, c).imag() < 0 ? "" : "+")
         << a(r, c).imag() << "i";
    os << (r + 1 == N ? "]" : "\n");
  }
  return os.str();
}

//=========================================================================
// Two-qubit basis
//=========================================================================

enum class Qubit { A, B };

/// Standard two-qubit basis |1>=|++>, |2>=|+->, |3>=|-+>, |4>=|-->.
/// Qubit A is the most significant index: zero-based k = 2*a + b with
/// a, b = 0 for spin + and 1 for spin -.
class BasisIndex {
 public:
  /// One-based label 1..4.
  explicit BasisIndex(int label) : label_(label) {
    if (label < 1 || label > 4)
      throw DomainError("basis label must be in 1..4, got " +
                        std::to_string(label));
  }

  static BasisIndex from_signs(int s_a, int s_b) {
    if ((s_a != 1 && s_a != -1) || (s_b != 1 && s_b != -1))
      throw DomainError("spin signs must be +1 or -1");
    return BasisIndex(1 + (s_a == 1 ? 0 : 2) + (s_b == 1 ? 0 : 1));
  }

  int label() const { return label_; }
  std::size_t offset() const { return static_cast<std::size_t>(label_ - 1); }
  int sign_a() const { return label_ <= 2 ? 1 : -1; }
  int sign_b() const { return (label_ % 2 == 1) ? 1 : -1; }

  friend bool operator==(BasisIndex, BasisIndex) = default;

 private:
  int label_;
};

namespace pauli {
inline Matrix2 identity() { return Matrix2::identity(); }
inline Matrix2 x() { return {0.0, 1.0, 1.0, 0.0}; }
inline Matrix2 y() { return {0.0, complex(0, -1), complex(0, 1), 0.0}; }
inline Matrix2 z() { return {1.0, 0.0, 0.0, -1.0}; }
}  // namespace pauli

/// Kronecker product a (x) b with a on the slow index.
inline Matrix4 tensor(const Matrix2& a, const Matrix2& b) {
  Matrix4 m;
  for (std::size_t ar = 0; ar < 2; ++ar)
    for (std::size_t ac = 0; ac < 2; ++ac)
      for (std::size_t br = 0; br < 2; ++br)
        for (std::size_t bc = 0; bc < 2; ++bc)
          m(2 * ar + br, 2 * ac + bc) = a(ar, ac) * b(br, bc);
  return m;
}

/// Partial trace of a 4x4 operator, keeping the named qubit.
inline Matrix2 partial_trace(const Matrix4& m, Qubit keep) {
  Matrix2 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        r(i, j) += keep == Qubit::A ? m(2 * i + k, 2 * j + k)
                                    : m(2 * k + i, 2 * k + j);
  return r;
}

}  // namespace dephasing

#endif  // DEPHASING_MATRIX_HPP
