/*
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "ckn/bipartite.hpp"
#include "ckn/density.hpp"
#include "ckn/eigen.hpp"
#include "ckn/matrix.hpp"
#include "ckn/random.hpp"

namespace ckn {

/// Wootters concurrence with the square-root eigenvalues that produced it.
struct ConcurrenceResult {
  double value;
  std::array<double, 4> lambdas; // descending
};

/// Spin-flipped state (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y);
/// the conjugation is entrywise in the computational H/V product basis.
inline Matrix4 spin_flip(const Matrix4& rho) {
  const Matrix4 yy = tensor(pauli_y(), pauli_y());
  return yy * rho.conjugate() * yy;
}

/**
 * Wootters concurrence of a two-qubit state: max(0, l1 - l2 - l3 - l4)
 * with l_i the descending square roots of the eigenvalues of
 * rho (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y).
 *
 * Computed from the Hermitian form sqrt(rho) rho~ sqrt(rho), which shares
 * the spectrum of rho rho~ and keeps the eigensolve well conditioned.
 */
inline ConcurrenceResult concurrence(const DensityMatrix4& rho) {
  const Matrix4 root = psd_sqrt(rho.matrix());
  const Matrix4 r = root * spin_flip(rho.matrix()) * root;
  const auto eig = herm_eigen(0.5 * (r + r.adjoint()), 1e-9);

  ConcurrenceResult out{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (eig.values[i] < -1e-10)
      throw not_psd_error("concurrence: R-matrix eigenvalue below -1e-10");
    out.lambdas[i] = std::sqrt(std::max(eig.values[i], 0.0));
  }
  out.value = std::max(
      0.0, out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3]);
  return out;
}

enum class AngleSamplingLaw { uniform_theta, uniform_solid_angle };

/// One sample of the entanglement-breaking scan.
struct ScanRecord {
  double theta_a; // radians
  double theta_b;
  double phi_a;
  double c_full;
  double c_accessible;
  bool degenerate; // post-selection probability numerically zero
};

/**
 * Draws random scattering angles (theta_a, theta_b, phi_a; phi_b = 0 as
 * reference azimuth) and evaluates the concurrence of the full-mode and
 * accessible-mode pair outputs for the given input state. Draw order is
 * fixed (theta_a, theta_b, phi_a), so a record is a pure function of its
 * RngStream.
 */
inline ScanRecord scan_record(RngStream rng, const DensityMatrix4& input,
                              AngleSamplingLaw law) {
  const auto draw_theta = [&]() {
    if (law == AngleSamplingLaw::uniform_solid_angle)
      return std::acos(1.0 - 2.0 * rng.uniform01());
    return rng.uniform(0.0, M_PI);
  };
  ScanRecord rec{};
  rec.theta_a = draw_theta();
  rec.theta_b = draw_theta();
  rec.phi_a = rng.uniform(0.0, 2.0 * M_PI);

  const PairGeometry pg{ScatteringGeometry::canonical(rec.theta_a, rec.phi_a),
                        ScatteringGeometry::canonical(rec.theta_b, 0.0)};
  rec.c_full =
      concurrence(pair_channel_output(pg, input, PairChannelMode::full)).value;
  try {
    rec.c_accessible =
        concurrence(pair_channel_output(pg, input, PairChannelMode::accessible))
            .value;
  } catch (const degenerate_postselection_error&) {
    rec.degenerate = true;
    rec.c_accessible = 0.0;
  }
  return rec;
}

/**
 * n-sample scan; record i consumes stream rng.stream() + i of rng's seed,
 * so results are independent of evaluation order and worker count.
 */
inline std::vector<ScanRecord> entanglement_breaking_scan(
    std::size_t n, const RngStream& rng, const DensityMatrix4& input,
    AngleSamplingLaw law = AngleSamplingLaw::uniform_theta) {
  std::vector<ScanRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    records.push_back(scan_record(rng.substream(rng.stream() + i), input, law));
  return records;
}

} // namespace ckn
