/*
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <ostream>

#include "ckn/errors.hpp"

namespace ckn {

using complexd = std::complex<double>;

/**
 * Dense row-major complex matrix of compile-time dimension N.
 *
 * N = 2 and N = 4 carry polarization operators and one-/two-photon states;
 * N = 3 exists only as a Kraus mixing table. Dimension mismatches are
 * compile-time errors by construction.
 */
template <std::size_t N>
class Matrix {
  static_assert(N >= 2 && N <= 4, "supported dimensions are 2, 3 and 4");

public:
  using value_type = complexd;
  static constexpr std::size_t dim = N;

  constexpr Matrix() = default;

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix zero() { return Matrix{}; }

  complexd& operator()(std::size_t i, std::size_t j) { return e_[i * N + j]; }
  const complexd& operator()(std::size_t i, std::size_t j) const {
    return e_[i * N + j];
  }

  Matrix operator+(const Matrix& o) const {
    Matrix r;
    for (std::size_t k = 0; k < N * N; ++k) r.e_[k] = e_[k] + o.e_[k];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    Matrix r;
    for (std::size_t k = 0; k < N * N; ++k) r.e_[k] = e_[k] - o.e_[k];
    return r;
  }

  Matrix operator-() const {
    Matrix r;
    for (std::size_t k = 0; k < N * N; ++k) r.e_[k] = -e_[k];
    return r;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) e_[k] += o.e_[k];
    return *this;
  }

  Matrix operator*(const Matrix& o) const {
    Matrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const complexd a = (*this)(i, k);
        if (a == 0.0) continue;
        for (std::size_t j = 0; j < N; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  friend Matrix operator*(const complexd& s, const Matrix& m) {
    Matrix r;
    for (std::size_t k = 0; k < N * N; ++k) r.e_[k] = s * m.e_[k];
    return r;
  }

  friend Matrix operator*(const Matrix& m, const complexd& s) { return s * m; }

  Matrix adjoint() const {
    Matrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        r(i, j) = std::conj((*this)(j, i));
    return r;
  }

  Matrix conjugate() const {
    Matrix r;
    for (std::size_t k = 0; k < N * N; ++k) r.e_[k] = std::conj(e_[k]);
    return r;
  }

  Matrix transpose() const {
    Matrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) r(i, j) = (*this)(j, i);
    return r;
  }

  complexd trace() const {
    complexd t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : e_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : e_) m = std::max(m, std::abs(z));
    return m;
  }

  /// Largest |m_ij - conj(m_ji)| over all entries.
  double hermiticity_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
  }

  bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

  bool is_finite() const {
    for (const auto& z : e_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  friend double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).max_abs();
  }

private:
  std::array<complexd, N * N> e_{};
};

using Matrix2 = Matrix<2>;
using Matrix3 = Matrix<3>;
using Matrix4 = Matrix<4>;

/// Column vector companion to Matrix, used for pure states.
template <std::size_t N>
class Vector {
  static_assert(N >= 2 && N <= 4);

public:
  static constexpr std::size_t dim = N;

  constexpr Vector() = default;

  complexd& operator[](std::size_t i) { return e_[i]; }
  const complexd& operator[](std::size_t i) const { return e_[i]; }

  double norm() const {
    double s = 0.0;
    for (const auto& z : e_) s += std::norm(z);
    return std::sqrt(s);
  }

  Vector normalized() const {
    const double n = norm();
    if (n == 0.0) throw contract_error("cannot normalize the zero vector");
    Vector r;
    for (std::size_t i = 0; i < N; ++i) r[i] = e_[i] / n;
    return r;
  }

  /// Inner product <a|b>, conjugate-linear in the first argument.
  friend complexd dot(const Vector& a, const Vector& b) {
    complexd s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
    return s;
  }

  /// Rank-1 projector |v><v|.
  Matrix<N> outer() const {
    Matrix<N> m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = e_[i] * std::conj(e_[j]);
    return m;
  }

  friend Vector operator*(const Matrix<N>& m, const Vector& v) {
    Vector r;
    for (std::size_t i = 0; i < N; ++i) {
      complexd s = 0.0;
      for (std::size_t j = 0; j < N; ++j) s += m(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }

private:
  std::array<complexd, N> e_{};
};

using Vector2 = Vector<2>;
using Vector4 = Vector<4>;

/**
 * Kronecker product of two single-photon operators.
 *
 * Index convention: row = 2*i_a + i_b, i.e. the first factor is the
 * slow ("Alice") index and the second ("Bob") the fast one.
 */
inline Matrix4 tensor(const Matrix2& a, const Matrix2& b) {
  Matrix4 r;
  for (std::size_t ia = 0; ia < 2; ++ia)
    for (std::size_t ib = 0; ib < 2; ++ib)
      for (std::size_t ja = 0; ja < 2; ++ja)
        for (std::size_t jb = 0; jb < 2; ++jb)
          r(2 * ia + ib, 2 * ja + jb) = a(ia, ja) * b(ib, jb);
  return r;
}

inline Vector4 tensor(const Vector2& a, const Vector2& b) {
  Vector4 r;
  for (std::size_t ia = 0; ia < 2; ++ia)
    for (std::size_t ib = 0; ib < 2; ++ib) r[2 * ia + ib] = a[ia] * b[ib];
  return r;
}

/// Trace over the second (fast, "Bob") factor: (Tr_B m)_ij = sum_k m_(2i+k),(2j+k).
inline Matrix2 partial_trace_b(const Matrix4& m) {
  Matrix2 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      r(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
  return r;
}

inline Matrix2 pauli_x() {
  Matrix2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline Matrix2 pauli_y() {
  Matrix2 m;
  m(0, 1) = complexd(0.0, -1.0);
  m(1, 0) = complexd(0.0, 1.0);
  return m;
}

inline Matrix2 pauli_z() {
  Matrix2 m;
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

template <std::size_t N>
std::ostream& operator<<(std::ostream& os, const Matrix<N>& m) {
  for (std::size_t i = 0; i < N; ++i) {
    os << (i == 0 ? "[" : " ");
    for (std::size_t j = 0; j < N; ++j)
      os << m(i, j) << (j + 1 < N ? ", " : "");
    os << (i + 1 < N ? "\n" : "]");
  }
  return os;
}

} // namespace ckn
