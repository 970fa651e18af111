/*
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "ckn/density.hpp"
#include "ckn/eigen.hpp"
#include "ckn/errors.hpp"
#include "ckn/geometry.hpp"
#include "ckn/matrix.hpp"

// Kraus operators of the Compton-Klein-Nishina (CKN) polarization channel
// at 511 keV. K1 and K2 describe the two observable scattering errors; K3
// completes the channel and carries the loss to the environment. Summing
// <K_i rho K_i^dagger> over i = 1, 2 reproduces the Klein-Nishina cross
// section (see klein_nishina.hpp for the independent route).

namespace ckn {

/// First Kraus operator: a real nonnegative multiple of the identity.
/// The scalar is (1 - S) / (sqrt(2) (2 - S)^{3/2}) with S the direction
/// cosine; this is the regular form of the quotient of powers of (1 - S),
/// exact for S < 1 and the correct limit 0 at forward scattering.
inline double kraus_k1_scalar(const ScatteringGeometry& g) {
  const double u = 1.0 - g.direction_cosine();
  return u / (std::sqrt(2.0) * std::pow(1.0 + u, 1.5));
}

/// Simplified theta-only scalar in the canonical frame (theta_s = 0),
/// k1 = (1 - cos ta) / (sqrt(2) (2 - cos ta)^{3/2}); exposed for testing
/// against the general form.
inline double kraus_k1_scalar_canonical(double theta_a) {
  const double c = std::cos(theta_a);
  return (1.0 - c) / (std::sqrt(2.0) * std::pow(2.0 - c, 1.5));
}

inline Matrix2 kraus_k1(const ScatteringGeometry& g) {
  return kraus_k1_scalar(g) * Matrix2::identity();
}

/**
 * Second Kraus operator. All four entries share the denominator
 * D = S - 2 <= -1; entry (0,0) uses the cos(ps - pa) / D form, which is
 * the regular equivalent of dividing by sec(ps - pa).
 */
inline Matrix2 kraus_k2(const ScatteringGeometry& g) {
  const double d = g.denominator();
  const double delta = g.phi_s() - g.phi_a();
  const double cd = std::cos(delta);
  const double sd = std::sin(delta);
  const double cts = std::cos(g.theta_s());
  const double sts = std::sin(g.theta_s());
  const double cta = std::cos(g.theta_a());
  const double sta = std::sin(g.theta_a());

  Matrix2 k;
  k(0, 0) = cd / d;
  k(0, 1) = complexd(0.0, -1.0) * (cts * sd / d);
  k(1, 0) = complexd(0.0, 1.0) * (cta * sd / d);
  k(1, 1) = -(cts * cta * cd + sts * sta) / d;
  return k;
}

/**
 * Coefficients of the canonical-frame loss operator: mean_survival is the
 * unpolarized probability of staying observable (k1^2 + (1 + c^2) /
 * (2 (2 - c)^2) in closed form) and modulation the amplitude of its
 * oscillation over pure states.
 */
struct CanonicalK3Coefficients {
  double mean_survival;
  double modulation;

  static CanonicalK3Coefficients from_theta(double theta_a) {
    const double c = std::cos(theta_a);
    const double s = std::sin(theta_a);
    const double cm2 = c - 2.0;
    CanonicalK3Coefficients out;
    out.mean_survival = (15.0 * c - 6.0 * (std::cos(2.0 * theta_a) + 3.0) +
                         std::cos(3.0 * theta_a)) /
                        (8.0 * cm2 * cm2 * cm2);
    out.modulation = s * s / (2.0 * cm2 * cm2);
    const double one_minus_a = 1.0 - out.mean_survival;
    if (one_minus_a * one_minus_a - out.modulation * out.modulation < -1e-12)
      throw model_violation_error(
          "CanonicalK3Coefficients: negative radicand (1-A)^2 - B^2");
    return out;
  }
};

/**
 * Canonical-frame (theta_s = 0, phi_s = 0) loss operator K3, satisfying
 * K3^dagger K3 = I - K1^dagger K1 - K2^dagger K2 to machine precision.
 *
 * Implemented in the cancellation-free form
 *   K3 = [[G - B cos(2 pa), -i B sin(2 pa)],
 *         [-i B sin(2 pa), -(G + B cos(2 pa))]] / sqrt(2 G),
 * G = (1 - A) + sqrt((1-A)^2 - B^2); multiplying out the published
 * prefactor-times-matrix form reproduces exactly this, without the 0/0 of
 * the B -> 0 limit. At theta_a = 0 the operator vanishes (no loss at
 * forward scattering).
 */
inline Matrix2 kraus_k3_canonical(double theta_a, double phi_a) {
  const auto coeff = CanonicalK3Coefficients::from_theta(theta_a);
  const double one_minus_a = 1.0 - coeff.mean_survival;
  const double b = coeff.modulation;
  const double radicand = std::max(one_minus_a * one_minus_a - b * b, 0.0);
  const double g = one_minus_a + std::sqrt(radicand);
  if (g <= 0.0) return Matrix2::zero(); // theta_a = 0: K2 alone is unitary

  const double scale = 1.0 / std::sqrt(2.0 * g);
  const double c2 = std::cos(2.0 * phi_a);
  const double s2 = std::sin(2.0 * phi_a);
  Matrix2 k;
  k(0, 0) = scale * (g - b * c2);
  k(0, 1) = complexd(0.0, -1.0) * (scale * b * s2);
  k(1, 0) = complexd(0.0, -1.0) * (scale * b * s2);
  k(1, 1) = -scale * (g + b * c2);
  return k;
}

/**
 * Loss operator for an arbitrary source frame, defined as the PSD square
 * root of the completeness deficit I - K1^dagger K1 - K2^dagger K2. Any
 * such root is a valid representative (Kraus freedom); in the canonical
 * frame it agrees with kraus_k3_canonical up to a left unitary.
 */
inline Matrix2 kraus_k3_general(const ScatteringGeometry& g) {
  const Matrix2 k1 = kraus_k1(g);
  const Matrix2 k2 = kraus_k2(g);
  const Matrix2 deficit =
      Matrix2::identity() - k1.adjoint() * k1 - k2.adjoint() * k2;
  try {
    return psd_sqrt(deficit, 1e-10);
  } catch (const not_psd_error& e) {
    throw model_violation_error(
        std::string("kraus_k3_general: completeness deficit not PSD (") +
        e.what() + ")");
  }
}

/// Ordered Kraus operators with their completeness contract.
struct KrausSet {
  enum class Completeness { full, sub_channel };

  std::vector<Matrix2> ops;
  Completeness completeness = Completeness::full;

  /// || sum K^dagger K - I ||_F
  double completeness_defect() const {
    Matrix2 sum;
    for (const auto& k : ops) sum += k.adjoint() * k;
    return (sum - Matrix2::identity()).frobenius_norm();
  }

  void validate(double tol = 1e-10) const {
    Matrix2 sum;
    for (const auto& k : ops) sum += k.adjoint() * k;
    if (completeness == Completeness::full) {
      if ((sum - Matrix2::identity()).frobenius_norm() >= tol)
        throw contract_error("KrausSet: completeness defect above tolerance");
    } else {
      const auto eig = herm_eigen(Matrix2::identity() - sum, 1e-9);
      if (eig.values[1] < -tol)
        throw contract_error("KrausSet: sub-channel deficit not PSD");
    }
  }
};

/// Full channel {K1, K2, K3} in the canonical frame.
inline KrausSet canonical_kraus_set(double theta_a, double phi_a) {
  const auto g = ScatteringGeometry::canonical(theta_a, phi_a);
  return KrausSet{{kraus_k1(g), kraus_k2(g), kraus_k3_canonical(theta_a, phi_a)},
                  KrausSet::Completeness::full};
}

/// Full channel {K1, K2, K3} for an arbitrary source frame.
inline KrausSet general_kraus_set(const ScatteringGeometry& g) {
  return KrausSet{{kraus_k1(g), kraus_k2(g), kraus_k3_general(g)},
                  KrausSet::Completeness::full};
}

/// Observable part {K1, K2} (sub-channel: sums to I minus the loss term).
inline KrausSet accessible_pair(const ScatteringGeometry& g) {
  return KrausSet{{kraus_k1(g), kraus_k2(g)},
                  KrausSet::Completeness::sub_channel};
}

/**
 * Kraus freedom F_l = sum_k U_lk K_k. The mixed set represents the same
 * (sub-)channel for any unitary table U; the table dimension must match
 * the operator count.
 */
template <std::size_t N>
KrausSet mix_kraus_set(const KrausSet& set, const Matrix<N>& table) {
  if (set.ops.size() != N)
    throw contract_error("mix_kraus_set: table dimension != operator count");
  KrausSet mixed;
  mixed.completeness = set.completeness;
  mixed.ops.resize(N);
  for (std::size_t l = 0; l < N; ++l) {
    Matrix2 f;
    for (std::size_t k = 0; k < N; ++k) f += table(l, k) * set.ops[k];
    mixed.ops[l] = f;
  }
  return mixed;
}

/// Per-operator error probabilities p_l = Tr(K_l rho K_l^dagger) of a full
/// three-operator set; they sum to one.
inline std::array<double, 3> error_probabilities(const KrausSet& set,
                                                 const DensityMatrix2& rho) {
  if (set.completeness != KrausSet::Completeness::full || set.ops.size() != 3)
    throw contract_error("error_probabilities: need the full 3-operator set");
  std::array<double, 3> p{};
  for (std::size_t l = 0; l < 3; ++l)
    p[l] = (set.ops[l] * rho.matrix() * set.ops[l].adjoint()).trace().real();
  return p;
}

/// Spatial single-scattering probability sum_{i=1,2} Tr(K_i rho K_i^dagger);
/// equals half the Klein-Nishina cross section for the matching polarization.
inline double single_scatter_probability(const ScatteringGeometry& g,
                                         const DensityMatrix2& rho) {
  const double k1 = kraus_k1_scalar(g);
  const Matrix2 k2 = kraus_k2(g);
  return k1 * k1 +
         (k2 * rho.matrix() * k2.adjoint()).trace().real();
}

/**
 * Extremes of p_l over pure states. The probability is linear in rho, so
 * the extremes are the smallest and largest eigenvalue of K_l^dagger K_l.
 * l is the 1-based operator index.
 */
inline std::pair<double, double> extremal_pure_probabilities(
    const KrausSet& set, std::size_t l) {
  if (l < 1 || l > set.ops.size())
    throw contract_error("extremal_pure_probabilities: index out of range");
  const Matrix2& k = set.ops[l - 1];
  const auto eig = herm_eigen(k.adjoint() * k, 1e-9);
  return {eig.values[1], eig.values[0]};
}

} // namespace ckn
