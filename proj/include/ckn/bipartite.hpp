/*
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "ckn/density.hpp"
#include "ckn/errors.hpp"
#include "ckn/geometry.hpp"
#include "ckn/kraus.hpp"
#include "ckn/random.hpp"

// Double and sequential scattering of a polarization-entangled photon
// pair. Pair operators are K_i(alice) (x) K_j(bob mirrored): the partner
// photon counter-propagates, so its azimuth enters with reversed
// handedness. With that convention the psi+ pair distribution depends on
// the azimuths only through delta_phi = phi_a - phi_b, and common-rotation
// invariance holds; experiments quote angles with phi_b = 0 as reference.

namespace ckn {

inline Vector2 ket_h() {
  Vector2 v;
  v[0] = 1.0;
  return v;
}

inline Vector2 ket_v() {
  Vector2 v;
  v[1] = 1.0;
  return v;
}

inline Vector4 ket_psi_plus() {
  const double r = 1.0 / std::sqrt(2.0);
  Vector4 v;
  v[1] = r; // |HV>
  v[2] = r; // |VH>
  return v;
}

inline Vector4 ket_psi_minus() {
  const double r = 1.0 / std::sqrt(2.0);
  Vector4 v;
  v[1] = r;
  v[2] = -r;
  return v;
}

inline DensityMatrix2 h_state() { return DensityMatrix2::from_pure(ket_h()); }
inline DensityMatrix2 v_state() { return DensityMatrix2::from_pure(ket_v()); }

inline DensityMatrix4 psi_plus_state() {
  return DensityMatrix4::from_pure(ket_psi_plus());
}

inline DensityMatrix4 psi_minus_state() {
  return DensityMatrix4::from_pure(ket_psi_minus());
}

/// Separable mixture (|HV><HV| + |VH><VH|) / 2 = (psi+ + psi-) / 2.
inline DensityMatrix4 mixed_hv_state() {
  Matrix4 m;
  m(1, 1) = 0.5;
  m(2, 2) = 0.5;
  return DensityMatrix4::make(m);
}

/// Observable weight K1^dagger K1 + K2^dagger K2 of one scattering.
inline Matrix2 accessible_weight(const ScatteringGeometry& g) {
  const Matrix2 k1 = kraus_k1(g);
  const Matrix2 k2 = kraus_k2(g);
  return k1.adjoint() * k1 + k2.adjoint() * k2;
}

namespace detail {

inline void require_canonical_frame(const ScatteringGeometry& g,
                                    const char* who) {
  if (std::abs(g.theta_s()) > 1e-15 || std::abs(g.phi_s()) > 1e-15)
    throw contract_error(std::string(who) +
                         ": defined in the canonical source frame only");
}

} // namespace detail

/**
 * Spatial probability of a double-scattered pair,
 * sum_{i,j=1,2} Tr((K_i (x) K_j) rho (K_i (x) K_j)^dagger), evaluated as
 * Tr(rho (M_a (x) M_b)) with M the per-photon observable weight.
 */
inline double double_scatter_probability(const PairGeometry& pg,
                                         const DensityMatrix4& rho) {
  const Matrix4 weight = tensor(accessible_weight(pg.alice),
                                accessible_weight(pg.bob.mirrored()));
  return (rho.matrix() * weight).trace().real();
}

enum class PairChannelMode { full, accessible };

/**
 * Two-photon channel output. Full mode applies all nine canonical Kraus
 * pairs (trace preserving); accessible mode keeps only the observable
 * 2x2 pairs and renormalizes by the double-scattering probability
 * (post-selection on coincidence detection).
 */
inline DensityMatrix4 pair_channel_output(const PairGeometry& pg,
                                          const DensityMatrix4& rho,
                                          PairChannelMode mode) {
  const ScatteringGeometry bob = pg.bob.mirrored();

  std::vector<Matrix2> alice_ops;
  std::vector<Matrix2> bob_ops;
  if (mode == PairChannelMode::full) {
    detail::require_canonical_frame(pg.alice, "pair_channel_output[full]");
    detail::require_canonical_frame(pg.bob, "pair_channel_output[full]");
    alice_ops = canonical_kraus_set(pg.alice.theta_a(), pg.alice.phi_a()).ops;
    bob_ops = canonical_kraus_set(bob.theta_a(), bob.phi_a()).ops;
  } else {
    alice_ops = accessible_pair(pg.alice).ops;
    bob_ops = accessible_pair(bob).ops;
  }

  Matrix4 out;
  for (const auto& ka : alice_ops)
    for (const auto& kb : bob_ops) {
      const Matrix4 pair_op = tensor(ka, kb);
      out += pair_op * rho.matrix() * pair_op.adjoint();
    }

  if (mode == PairChannelMode::accessible) {
    const double p = out.trace().real();
    if (p < 1e-14)
      throw degenerate_postselection_error(
          "pair_channel_output: post-selection probability below 1e-14");
    out = (1.0 / p) * out;
  }
  return DensityMatrix4::make(0.5 * (out + out.adjoint()));
}

/**
 * One photon of the pair scatters a second time with geometry g2. The
 * scattering acts as a measurement-like process: the twice-scattered
 * photon is described by its reduced state before the second event,
 *   p = sum_{c,a,b=1,2} Tr(K_c Tr_B((K_a (x) K_b) rho (...)^dg) K_c^dg),
 * which is independent of the Kraus representative chosen at any stage.
 * g2 is expressed in the same canonical-frame convention as the first
 * scattering of that photon (no mirroring; it is alice's photon).
 */
inline double second_scatter_probability(const PairGeometry& pg,
                                         const ScatteringGeometry& g2,
                                         const DensityMatrix4& rho) {
  const auto alice_ops = accessible_pair(pg.alice).ops;
  const auto bob_ops = accessible_pair(pg.bob.mirrored()).ops;

  Matrix4 after_first;
  for (const auto& ka : alice_ops)
    for (const auto& kb : bob_ops) {
      const Matrix4 pair_op = tensor(ka, kb);
      after_first += pair_op * rho.matrix() * pair_op.adjoint();
    }
  const Matrix2 reduced = partial_trace_b(after_first);
  return (reduced * accessible_weight(g2)).trace().real();
}

namespace detail {

inline double chained_pair_trace(const std::vector<Matrix2>& first_stage,
                                 const ScatteringGeometry& bob_mirrored,
                                 const ScatteringGeometry& g2,
                                 const DensityMatrix4& rho) {
  const auto bob_ops = accessible_pair(bob_mirrored).ops;
  const auto second_ops = accessible_pair(g2).ops;
  double p = 0.0;
  for (const auto& kc : second_ops)
    for (const auto& ka : first_stage)
      for (const auto& kb : bob_ops) {
        const Matrix4 op = tensor(kc * ka, kb);
        p += (op * rho.matrix() * op.adjoint()).trace().real();
      }
  return p;
}

} // namespace detail

/**
 * The rejected composition sum_{c,a,b=1,2} Tr((K_c K_a (x) K_b) rho
 * (...)^dg) that chains operators instead of channels. It exists to probe
 * representation dependence, not to predict physics.
 *
 * Remixing the observable pair among themselves (the 2x2 overload) leaves
 * the value invariant -- the unitary cancels around rho, and as a scalar
 * this trace coincides with second_scatter_probability. What is
 * representation dependent is the selection of "the observable pair"
 * itself: remix the full three-operator set by a 3x3 unitary (the 3x3
 * overload) and keep the first two mixed operators, and the value moves
 * by order one.
 */
inline double naive_sequential_probability(const PairGeometry& pg,
                                           const ScatteringGeometry& g2,
                                           const DensityMatrix4& rho) {
  return detail::chained_pair_trace(accessible_pair(pg.alice).ops,
                                    pg.bob.mirrored(), g2, rho);
}

inline double naive_sequential_probability(const PairGeometry& pg,
                                           const ScatteringGeometry& g2,
                                           const DensityMatrix4& rho,
                                           const Matrix2& pair_mixing) {
  const KrausSet first = mix_kraus_set(accessible_pair(pg.alice), pair_mixing);
  return detail::chained_pair_trace(first.ops, pg.bob.mirrored(), g2, rho);
}

inline double naive_sequential_probability(const PairGeometry& pg,
                                           const ScatteringGeometry& g2,
                                           const DensityMatrix4& rho,
                                           const Matrix3& full_set_mixing) {
  detail::require_canonical_frame(pg.alice, "naive_sequential_probability");
  const KrausSet full = mix_kraus_set(
      canonical_kraus_set(pg.alice.theta_a(), pg.alice.phi_a()),
      full_set_mixing);
  const std::vector<Matrix2> truncated{full.ops[0], full.ops[1]};
  return detail::chained_pair_trace(truncated, pg.bob.mirrored(), g2, rho);
}

struct Envelope {
  double lo;
  double hi;
};

enum class StateFamily { all, product_pure, entangled_pure };

namespace detail {

/// <chi| contraction of the Bob factor: 2x2 operator acting on Alice.
inline Matrix2 contract_bob(const Matrix4& m, const Vector2& chi) {
  Matrix2 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t i2 = 0; i2 < 2; ++i2) {
      complexd s = 0.0;
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t j2 = 0; j2 < 2; ++j2)
          s += std::conj(chi[j]) * m(2 * i + j, 2 * i2 + j2) * chi[j2];
      r(i, i2) = s;
    }
  return r;
}

inline Matrix2 contract_alice(const Matrix4& m, const Vector2& psi) {
  Matrix2 r;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t j2 = 0; j2 < 2; ++j2) {
      complexd s = 0.0;
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t i2 = 0; i2 < 2; ++i2)
          s += std::conj(psi[i]) * m(2 * i + j, 2 * i2 + j2) * psi[i2];
      r(j, j2) = s;
    }
  return r;
}

inline Vector2 eigvec_column(const HermEigen<2>& eig, bool top) {
  Vector2 v;
  const std::size_t col = top ? 0 : 1;
  v[0] = eig.vectors(0, col);
  v[1] = eig.vectors(1, col);
  return v;
}

/// Alternating eigen-iteration for one extremum of <psi (x) chi| m |...>.
inline double product_extremum(const Matrix4& m, bool maximize,
                               RngStream& rng, int starts, int max_iters,
                               double tol) {
  double best = maximize ? -1e300 : 1e300;
  for (int s = 0; s < starts; ++s) {
    Vector2 chi = haar_vector<2>(rng);
    double value = maximize ? -1e300 : 1e300;
    bool converged = false;
    for (int it = 0; it < max_iters; ++it) {
      const auto on_alice = herm_eigen(contract_bob(m, chi), 1e-9);
      const Vector2 psi = eigvec_column(on_alice, maximize);
      const auto on_bob = herm_eigen(contract_alice(m, psi), 1e-9);
      chi = eigvec_column(on_bob, maximize);
      const double next = maximize ? on_bob.values[0] : on_bob.values[1];
      if (std::abs(next - value) < tol) {
        value = next;
        converged = true;
        break;
      }
      value = next;
    }
    if (!converged)
      throw convergence_error(
          "probability_envelope: alternating iteration did not stabilize",
          maximize ? std::max(best, value) : std::min(best, value));
    best = maximize ? std::max(best, value) : std::min(best, value);
  }
  return best;
}

} // namespace detail

/**
 * Extremes of the double-scattering probability over a family of input
 * states at fixed pair geometry. The probability is linear in rho, so the
 * all-states extremes are the extreme eigenvalues of the pair weight
 * M_a (x) M_b (attained on pure states, hence also the entangled-pure
 * envelope); the product-pure extremes are found by alternating
 * eigen-iteration with Haar multistarts.
 */
inline Envelope probability_envelope(const PairGeometry& pg,
                                     StateFamily family, int starts = 20,
                                     std::uint64_t opt_seed = 0x636b6e01) {
  const Matrix4 weight = tensor(accessible_weight(pg.alice),
                                accessible_weight(pg.bob.mirrored()));
  if (family == StateFamily::product_pure) {
    RngStream rng(opt_seed, 0);
    const double hi =
        detail::product_extremum(weight, true, rng, starts, 1000, 1e-10);
    const double lo =
        detail::product_extremum(weight, false, rng, starts, 1000, 1e-10);
    return {lo, hi};
  }
  const auto eig = herm_eigen(weight, 1e-9);
  return {eig.values[3], eig.values[0]};
}

} // namespace ckn
