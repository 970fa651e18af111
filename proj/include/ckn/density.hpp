/*
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cmath>

#include "ckn/eigen.hpp"
#include "ckn/errors.hpp"
#include "ckn/matrix.hpp"
#include "ckn/random.hpp"

namespace ckn {

/**
 * Validated density matrix: Hermitian within 1e-12, unit trace within
 * 1e-12, eigenvalues >= -1e-12. Construction is the single validation
 * point; instances are immutable and safe to share across threads.
 */
template <std::size_t N>
class DensityMatrix {
  static_assert(N == 2 || N == 4, "states are one or two polarization qubits");

public:
  static constexpr double herm_tol = 1e-12;
  static constexpr double trace_tol = 1e-12;
  static constexpr double psd_tol = 1e-12;

  static DensityMatrix make(const Matrix<N>& m) {
    if (!m.is_finite())
      throw contract_error("DensityMatrix: non-finite entries");
    if (!m.is_hermitian(herm_tol))
      throw contract_error("DensityMatrix: not Hermitian within 1e-12");
    if (std::abs(m.trace() - complexd(1.0)) > trace_tol)
      throw contract_error("DensityMatrix: trace differs from 1 beyond 1e-12");
    const auto eig = herm_eigen(m, herm_tol);
    if (eig.values[N - 1] < -psd_tol)
      throw contract_error("DensityMatrix: negative eigenvalue beyond 1e-12");
    return DensityMatrix(m);
  }

  /// Rank-1 projector of a normalized vector; valid by construction.
  static DensityMatrix from_pure(const Vector<N>& v) {
    return DensityMatrix(v.normalized().outer());
  }

  static DensityMatrix maximally_mixed() {
    return DensityMatrix((1.0 / static_cast<double>(N)) *
                         Matrix<N>::identity());
  }

  const Matrix<N>& matrix() const { return m_; }

  double purity() const { return (m_ * m_).trace().real(); }

private:
  explicit DensityMatrix(const Matrix<N>& m) : m_(m) {}
  Matrix<N> m_;
};

using DensityMatrix2 = DensityMatrix<2>;
using DensityMatrix4 = DensityMatrix<4>;

/// Haar-random pure state as a density matrix.
template <std::size_t N>
DensityMatrix<N> random_pure_state(RngStream& rng) {
  return DensityMatrix<N>::from_pure(haar_vector<N>(rng));
}

} // namespace ckn
