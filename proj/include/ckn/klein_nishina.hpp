/*
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cmath>
#include <optional>

// Klein-Nishina differential cross section (dimensionless, r0^2 dropped)
// for photons at the electron rest energy, where the Compton energy ratio
// is k'/k = 1 / (2 - cos(theta)).
//
// This header is the anti-regression oracle for the Kraus-operator route
// and deliberately depends on nothing else in the library.

namespace ckn {

/// Energy ratio k'/k of the scattered photon at 511 keV.
inline double compton_energy_ratio(double theta) {
  return 1.0 / (2.0 - std::cos(theta));
}

/// Unpolarized cross section (k'/k)^2 (k/k' + k'/k - sin^2 theta).
inline double klein_nishina_unpolarized(double theta) {
  const double kappa = compton_energy_ratio(theta);
  const double s = std::sin(theta);
  return kappa * kappa * (1.0 / kappa + kappa - s * s);
}

/**
 * Linearly polarized cross section
 * (k'/k)^2 (k/k' + k'/k - 2 sin^2 theta cos^2 eta), eta being the angle
 * between the incident polarization and the scattering plane.
 */
inline double klein_nishina_polarized(double theta, double eta) {
  const double kappa = compton_energy_ratio(theta);
  const double s = std::sin(theta);
  const double ce = std::cos(eta);
  return kappa * kappa * (1.0 / kappa + kappa - 2.0 * s * s * ce * ce);
}

/// Dispatch on the optional polarization angle (none = unpolarized).
inline double klein_nishina(double theta, std::optional<double> eta) {
  return eta ? klein_nishina_polarized(theta, *eta)
             : klein_nishina_unpolarized(theta);
}

} // namespace ckn
