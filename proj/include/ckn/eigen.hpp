/*
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "ckn/errors.hpp"
#include "ckn/matrix.hpp"

namespace ckn {

/// Eigendecomposition of a Hermitian matrix: m = V diag(values) V^dagger,
/// eigenvalues sorted descending, V unitary with eigenvectors as columns.
template <std::size_t N>
struct HermEigen {
  std::array<double, N> values{};
  Matrix<N> vectors;
};

namespace detail {

/// One complex Jacobi rotation zeroing the (p, q) off-diagonal entry.
template <std::size_t N>
void jacobi_rotate(Matrix<N>& a, Matrix<N>& v, std::size_t p, std::size_t q) {
  const complexd beta = a(p, q);
  const double b = std::abs(beta);
  if (b == 0.0) return;
  const complexd phase = beta / b;

  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  // tan(2*theta) = 2|beta| / (app - aqq), smaller-angle root for stability.
  double t;
  if (app == aqq) {
    t = 1.0;
  } else {
    const double w = (app - aqq) / (2.0 * b);
    t = (w >= 0.0 ? 1.0 : -1.0) / (std::abs(w) + std::sqrt(w * w + 1.0));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  Matrix<N> rot = Matrix<N>::identity();
  rot(p, p) = c;
  rot(p, q) = -s * phase;
  rot(q, p) = s * std::conj(phase);
  rot(q, q) = c;

  a = rot.adjoint() * a * rot;
  a(p, q) = 0.0; // exact by construction of the rotation
  a(q, p) = 0.0;
  v = v * rot;
}

template <std::size_t N>
double offdiag_norm(const Matrix<N>& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = p + 1; q < N; ++q) s += std::norm(a(p, q));
  return std::sqrt(2.0 * s);
}

} // namespace detail

/**
 * Hermitian eigendecomposition by cyclic Jacobi sweeps.
 *
 * Deterministic (fixed pivot order, no randomization) and accurate to
 * ~1e-15 relative for the dimensions used here. The input must be
 * Hermitian within herm_tol; it is exactly symmetrized before iterating.
 */
template <std::size_t N>
HermEigen<N> herm_eigen(const Matrix<N>& m, double herm_tol = 1e-12) {
  if (!m.is_finite())
    throw contract_error("herm_eigen: input has non-finite entries");
  if (!m.is_hermitian(herm_tol))
    throw contract_error("herm_eigen: input is not Hermitian within tolerance");

  Matrix<N> a = 0.5 * (m + m.adjoint());
  Matrix<N> v = Matrix<N>::identity();

  const double scale = std::max(a.frobenius_norm(), 1e-300);
  constexpr int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (detail::offdiag_norm(a) <= 1e-16 * scale) break;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q)
        detail::jacobi_rotate(a, v, p, q);
  }

  HermEigen<N> out;
  std::array<std::size_t, N> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::array<double, N> diag{};
  for (std::size_t i = 0; i < N; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });
  for (std::size_t i = 0; i < N; ++i) {
    out.values[i] = diag[order[i]];
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, i) = v(r, order[i]);
  }
  return out;
}

/**
 * Hermitian PSD square root. Eigenvalues in [-clamp, 0) are clamped to 0;
 * anything below -clamp raises not_psd_error.
 */
template <std::size_t N>
Matrix<N> psd_sqrt(const Matrix<N>& m, double clamp = 1e-12) {
  const auto eig = herm_eigen(m);
  for (double lambda : eig.values)
    if (lambda < -clamp)
      throw not_psd_error("psd_sqrt: eigenvalue " + std::to_string(lambda) +
                          " below the PSD clamp window");

  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i) {
    const double root = std::sqrt(std::max(eig.values[i], 0.0));
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t y = 0; y < N; ++y)
        r(x, y) += root * eig.vectors(x, i) * std::conj(eig.vectors(y, i));
  }
  return 0.5 * (r + r.adjoint());
}

} // namespace ckn
