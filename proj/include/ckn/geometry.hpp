/*
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cmath>

#include "ckn/errors.hpp"

namespace ckn {

inline double wrap_angle_2pi(double phi) {
  double w = std::fmod(phi, 2.0 * M_PI);
  if (w < 0.0) w += 2.0 * M_PI;
  // fmod can round back up to the period itself
  if (w >= 2.0 * M_PI) w = 0.0;
  return w;
}

inline double deg_to_rad(double deg) { return deg * M_PI / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / M_PI; }

/**
 * One Compton scattering event at 511 keV.
 *
 * (theta_s, phi_s) orient the source coordinate system, (theta_a, phi_a)
 * the change of propagation direction. The cosine of the full scattering
 * angle is S = sin(ts) sin(ta) cos(ps - pa) + cos(ts) cos(ta), and every
 * closed form divides by D = S - 2, which is bounded away from zero.
 */
class ScatteringGeometry {
public:
  ScatteringGeometry(double theta_s, double phi_s, double theta_a,
                     double phi_a)
      : theta_s_(normalize_polar(theta_s, "theta_s")),
        phi_s_(wrap_angle_2pi(phi_s)),
        theta_a_(normalize_polar(theta_a, "theta_a")),
        phi_a_(wrap_angle_2pi(phi_a)) {
    if (!(denominator() <= -1.0 + 1e-12))
      throw contract_error("ScatteringGeometry: denominator above -1");
  }

  /// Canonical source frame theta_s = 0, phi_s = 0.
  static ScatteringGeometry canonical(double theta_a, double phi_a) {
    return ScatteringGeometry(0.0, 0.0, theta_a, phi_a);
  }

  double theta_s() const { return theta_s_; }
  double phi_s() const { return phi_s_; }
  double theta_a() const { return theta_a_; }
  double phi_a() const { return phi_a_; }

  /// Cosine of the angle between source axis and outgoing direction.
  double direction_cosine() const {
    return std::sin(theta_s_) * std::sin(theta_a_) *
               std::cos(phi_s_ - phi_a_) +
           std::cos(theta_s_) * std::cos(theta_a_);
  }

  double denominator() const { return direction_cosine() - 2.0; }

  /**
   * Same event seen with reversed azimuthal handedness (phi -> -phi).
   * Counter-propagating partner photons carry the opposite handedness, so
   * pair operators use the mirrored geometry on the second photon.
   */
  ScatteringGeometry mirrored() const {
    return ScatteringGeometry(theta_s_, -phi_s_, theta_a_, -phi_a_);
  }

private:
  // accepts rounding spill of at most 1e-9 beyond the poles
  static double normalize_polar(double theta, const char* name) {
    if (theta < 0.0) {
      if (theta < -1e-9)
        throw contract_error(std::string("ScatteringGeometry: ") + name +
                             " outside [0, pi]");
      return 0.0;
    }
    if (theta > M_PI) {
      if (theta > M_PI + 1e-9)
        throw contract_error(std::string("ScatteringGeometry: ") + name +
                             " outside [0, pi]");
      return M_PI;
    }
    return theta;
  }

  double theta_s_;
  double phi_s_;
  double theta_a_;
  double phi_a_;
};

/// Scattering geometry of a photon pair; alice is the first tensor factor.
struct PairGeometry {
  ScatteringGeometry alice;
  ScatteringGeometry bob;

  /// Relative azimuth phi_a - phi_b modulo 2*pi.
  double delta_phi() const {
    return wrap_angle_2pi(alice.phi_a() - bob.phi_a());
  }
};

} // namespace ckn
