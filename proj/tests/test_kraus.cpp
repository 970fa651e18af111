/*
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <catch2/catch.hpp>

#include "ckn/klein_nishina.hpp"
#include "ckn/kraus.hpp"
#include "ckn/random.hpp"

using namespace ckn;

namespace {

ScatteringGeometry random_canonical(RngStream& rng) {
  return ScatteringGeometry::canonical(rng.uniform(0.0, M_PI),
                                       rng.uniform(0.0, 2.0 * M_PI));
}

ScatteringGeometry random_frame(RngStream& rng) {
  return ScatteringGeometry(rng.uniform(0.0, M_PI),
                            rng.uniform(0.0, 2.0 * M_PI),
                            rng.uniform(0.0, M_PI),
                            rng.uniform(0.0, 2.0 * M_PI));
}

// Published quotient-of-powers form of the K1 scalar; 0/0 at forward
// scattering, used as a reference away from it.
double literal_k1_scalar(const ScatteringGeometry& g) {
  const double s = g.direction_cosine();
  const double num = std::pow((s - 1.0) * (s - 1.0) / (2.0 - s), 1.5);
  return num / (std::sqrt(2.0) * (1.0 - s) * (1.0 - s));
}

// Published K2 entry (0,0) with the sec(ps - pa) denominator; singular at
// |ps - pa| = pi/2 although the entry itself is finite.
complexd literal_k2_00(const ScatteringGeometry& g) {
  const double delta = g.phi_s() - g.phi_a();
  return 1.0 / ((std::cos(g.theta_s()) * std::cos(g.theta_a()) - 2.0) /
                    std::cos(delta) +
                std::sin(g.theta_s()) * std::sin(g.theta_a()));
}

// Prefactor-times-matrix layout of the canonical K3 (off-diagonal sign
// chosen so that completeness against K1 and K2 holds); 0/0 as B -> 0.
Matrix2 literal_k3(double theta_a, double phi_a) {
  const auto coeff = CanonicalK3Coefficients::from_theta(theta_a);
  const double a = coeff.mean_survival;
  const double b = coeff.modulation;
  const double r = std::sqrt((1.0 - a) * (1.0 - a) - b * b);
  const double f = std::sqrt(0.5 * (1.0 - a - r));
  Matrix2 k;
  k(0, 0) = f * (1.0 - a - b * std::cos(2.0 * phi_a) + r) / b;
  k(0, 1) = f * complexd(0.0, -1.0) * std::sin(2.0 * phi_a);
  k(1, 0) = k(0, 1);
  k(1, 1) = -f * (1.0 - a + b * std::cos(2.0 * phi_a) + r) / b;
  return k;
}

double closed_form_p1(double theta) {
  const double c = std::cos(theta);
  return (1.0 - c) * (1.0 - c) / (2.0 * std::pow(2.0 - c, 3.0));
}

double closed_form_p2_unpolarized(double theta) {
  const double c = std::cos(theta);
  return (1.0 + c * c) / (2.0 * (2.0 - c) * (2.0 - c));
}

double closed_form_single_unpolarized(double theta) {
  const double c = std::cos(theta);
  return (3.0 - 3.0 * c + 3.0 * c * c - c * c * c) /
         (2.0 * std::pow(2.0 - c, 3.0));
}

} // namespace

TEST_CASE("geometry normalizes azimuths and checks ranges", "[kraus]") {
  const ScatteringGeometry g(0.3, -1.0, 0.7, 7.0);
  REQUIRE(g.phi_s() == Approx(2.0 * M_PI - 1.0));
  REQUIRE(g.phi_a() == Approx(7.0 - 2.0 * M_PI));
  REQUIRE(g.denominator() <= -1.0 + 1e-12);
  REQUIRE_THROWS_AS(ScatteringGeometry(-0.1, 0.0, 0.5, 0.0), contract_error);
  REQUIRE_THROWS_AS(ScatteringGeometry(0.0, 0.0, 3.5, 0.0), contract_error);
}

TEST_CASE("K1 vanishes at forward scattering", "[kraus]") {
  for (double phi : {0.0, 1.0, 4.0})
    REQUIRE(kraus_k1_scalar(ScatteringGeometry::canonical(0.0, phi)) == 0.0);
}

TEST_CASE("K1 scalar at 82 degrees matches the closed form", "[kraus]") {
  const double theta = deg_to_rad(82.0);
  const double k1 = kraus_k1_scalar(ScatteringGeometry::canonical(theta, 0.4));
  REQUIRE(k1 * k1 == Approx(closed_form_p1(theta)).margin(1e-15));
  REQUIRE(k1 * k1 == Approx(0.0575).margin(1e-4));
}

TEST_CASE("K1 scalar is azimuth independent in the canonical frame", "[kraus]") {
  const double theta = deg_to_rad(130.0);
  const double ref = kraus_k1_scalar(ScatteringGeometry::canonical(theta, 0.0));
  for (int i = 1; i < 64; ++i) {
    const double phi = 2.0 * M_PI * i / 64.0;
    REQUIRE(kraus_k1_scalar(ScatteringGeometry::canonical(theta, phi)) ==
            Approx(ref).margin(1e-15));
  }
  REQUIRE(kraus_k1_scalar_canonical(theta) == Approx(ref).margin(1e-15));
}

TEST_CASE("K1 matches the published quotient form away from forward", "[kraus]") {
  RngStream rng(41, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = random_frame(rng);
    if (g.direction_cosine() > 0.999) continue;
    const double lit = literal_k1_scalar(g);
    REQUIRE(kraus_k1_scalar(g) == Approx(lit).epsilon(1e-12));
  }
}

TEST_CASE("K2 at forward scattering is the unitary diag(-1, 1)", "[kraus]") {
  const Matrix2 k2 = kraus_k2(ScatteringGeometry::canonical(0.0, 0.0));
  Matrix2 expected;
  expected(0, 0) = -1.0;
  expected(1, 1) = 1.0;
  REQUIRE(max_abs_diff(k2, expected) < 1e-15);
  REQUIRE((k2.adjoint() * k2 - Matrix2::identity()).frobenius_norm() < 1e-15);
}

TEST_CASE("K2 reduces to the canonical-frame matrix at theta_s = 0", "[kraus]") {
  RngStream rng(42, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const double theta = rng.uniform(0.0, M_PI);
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    const Matrix2 k2 = kraus_k2(ScatteringGeometry::canonical(theta, phi));
    const double c = std::cos(theta);
    const double delta = -phi; // phi_s = 0
    Matrix2 expected;
    expected(0, 0) = std::cos(delta) / (c - 2.0);
    expected(0, 1) = complexd(0.0, -1.0) * std::sin(delta) / (c - 2.0);
    expected(1, 0) = complexd(0.0, 1.0) * c * std::sin(delta) / (c - 2.0);
    expected(1, 1) = -c * std::cos(delta) / (c - 2.0);
    REQUIRE(max_abs_diff(k2, expected) < 1e-15);
  }
}

TEST_CASE("K2 unpolarized probability matches its closed form", "[kraus]") {
  const DensityMatrix2 mixed = DensityMatrix2::maximally_mixed();
  for (int i = 0; i <= 90; ++i) {
    const double theta = M_PI * i / 90.0;
    const Matrix2 k2 = kraus_k2(ScatteringGeometry::canonical(theta, 0.9));
    const double p2 = (k2 * mixed.matrix() * k2.adjoint()).trace().real();
    REQUIRE(p2 == Approx(closed_form_p2_unpolarized(theta)).margin(1e-14));
  }
  REQUIRE(closed_form_p2_unpolarized(deg_to_rad(82.0)) ==
          Approx(0.147).margin(1e-3));
}

TEST_CASE("K2 entry (0,0) is continuous where the sec form is singular", "[kraus]") {
  const double theta_s = 0.8, theta_a = 1.1, phi_s = 0.3;
  // the published sec form agrees wherever it is finite
  for (double eps : {0.3, 0.1, 0.01, 1e-4}) {
    const ScatteringGeometry g(theta_s, phi_s, theta_a,
                               phi_s + M_PI / 2.0 + eps);
    REQUIRE(std::abs(kraus_k2(g)(0, 0) - literal_k2_00(g)) < 1e-11);
  }
  // and the implementation stays finite and smooth across the pole
  const ScatteringGeometry pole(theta_s, phi_s, theta_a, phi_s + M_PI / 2.0);
  const ScatteringGeometry near1(theta_s, phi_s, theta_a,
                                 phi_s + M_PI / 2.0 - 1e-8);
  const ScatteringGeometry near2(theta_s, phi_s, theta_a,
                                 phi_s + M_PI / 2.0 + 1e-8);
  REQUIRE(std::abs(kraus_k2(pole)(0, 0)) < 1e-7);
  REQUIRE(std::abs(kraus_k2(near1)(0, 0) - kraus_k2(near2)(0, 0)) < 1e-7);
}

TEST_CASE("canonical K3 coefficients satisfy their identities", "[kraus]") {
  for (int i = 0; i <= 180; ++i) {
    const double theta = M_PI * i / 180.0;
    const auto coeff = CanonicalK3Coefficients::from_theta(theta);
    // mean survival equals p1 + p2 for the unpolarized state
    REQUIRE(coeff.mean_survival ==
            Approx(closed_form_single_unpolarized(theta)).margin(1e-13));
    const double one_minus = 1.0 - coeff.mean_survival;
    REQUIRE(one_minus * one_minus - coeff.modulation * coeff.modulation >=
            -1e-12);
    if (i > 0 && i < 180) REQUIRE(coeff.modulation > 0.0);
    REQUIRE(std::isfinite(coeff.mean_survival));
    REQUIRE(std::isfinite(coeff.modulation));
  }
}

TEST_CASE("canonical K3 vanishes at forward scattering", "[kraus]") {
  REQUIRE(kraus_k3_canonical(0.0, 0.0).max_abs() == 0.0);
  REQUIRE(kraus_k3_canonical(0.0, 2.2).max_abs() == 0.0);
}

TEST_CASE("canonical K3 matches the prefactor layout where B is sizable", "[kraus]") {
  // The prefactor layout cancels catastrophically as B -> 0 (its 1 - A - R
  // term underflows against rounding), so compare only where it is well
  // conditioned.
  RngStream rng(43, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const double theta = rng.uniform(0.05, M_PI - 0.05);
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    if (CanonicalK3Coefficients::from_theta(theta).modulation < 1e-2) continue;
    REQUIRE(max_abs_diff(kraus_k3_canonical(theta, phi),
                         literal_k3(theta, phi)) < 1e-11);
  }
}

TEST_CASE("canonical Kraus set is complete on a grid", "[kraus]") {
  for (int it = 0; it <= 60; ++it)
    for (int ip = 0; ip < 24; ++ip) {
      const double theta = M_PI * it / 60.0;
      const double phi = 2.0 * M_PI * ip / 24.0;
      REQUIRE(canonical_kraus_set(theta, phi).completeness_defect() < 1e-10);
    }
}

TEST_CASE("general K3 agrees with the canonical one in probability", "[kraus]") {
  RngStream rng(44, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_canonical(rng);
    const Matrix2 k3g = kraus_k3_general(g);
    const Matrix2 k3c = kraus_k3_canonical(g.theta_a(), g.phi_a());
    REQUIRE((k3g.adjoint() * k3g - k3c.adjoint() * k3c).frobenius_norm() <
            1e-10);
  }
}

TEST_CASE("general Kraus set is complete in arbitrary frames", "[kraus]") {
  RngStream rng(45, 0);
  for (int trial = 0; trial < 1000; ++trial)
    REQUIRE(general_kraus_set(random_frame(rng)).completeness_defect() <
            1e-10);
}

TEST_CASE("general K3 at the fully forward geometry is numerically zero", "[kraus]") {
  const Matrix2 k3 = kraus_k3_general(ScatteringGeometry::canonical(0.0, 0.0));
  REQUIRE(k3.max_abs() < 1e-7); // square root of a ~1e-16 deficit
}

TEST_CASE("error probabilities at forward scattering are (0, 1, 0)", "[kraus]") {
  const auto set = canonical_kraus_set(0.0, 0.7);
  RngStream rng(46, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = error_probabilities(set, random_pure_state<2>(rng));
    REQUIRE(std::abs(p[0]) < 1e-12);
    REQUIRE(p[1] == Approx(1.0).margin(1e-12));
    REQUIRE(std::abs(p[2]) < 1e-12);
  }
}

TEST_CASE("error probabilities at 82 degrees for the unpolarized state", "[kraus]") {
  const auto set = canonical_kraus_set(deg_to_rad(82.0), 0.0);
  const auto p = error_probabilities(set, DensityMatrix2::maximally_mixed());
  REQUIRE(p[0] == Approx(0.0575).margin(1e-3));
  REQUIRE(p[1] == Approx(0.147).margin(1e-3));
  REQUIRE(p[2] == Approx(0.795).margin(1e-3));
}

TEST_CASE("error probabilities are nonnegative and sum to one", "[kraus]") {
  RngStream rng(47, 0);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto g = random_canonical(rng);
    const auto set = canonical_kraus_set(g.theta_a(), g.phi_a());
    // alternate pure and mixed inputs
    const DensityMatrix2 rho =
        (trial % 2 == 0)
            ? random_pure_state<2>(rng)
            : DensityMatrix2::make(0.5 * (random_pure_state<2>(rng).matrix() +
                                          random_pure_state<2>(rng).matrix()));
    const auto p = error_probabilities(set, rho);
    double sum = 0.0;
    for (double pl : p) {
      REQUIRE(pl >= -1e-12);
      REQUIRE(pl <= 1.0 + 1e-12);
      sum += pl;
    }
    REQUIRE(sum == Approx(1.0).margin(1e-10));
  }
}

TEST_CASE("error probabilities require the full set", "[kraus]") {
  const auto sub = accessible_pair(ScatteringGeometry::canonical(1.0, 0.0));
  REQUIRE_THROWS_AS(
      error_probabilities(sub, DensityMatrix2::maximally_mixed()),
      contract_error);
}

TEST_CASE("H-state p2 oscillates with period pi in the azimuth", "[kraus]") {
  const double theta = deg_to_rad(82.0);
  const DensityMatrix2 h = DensityMatrix2::make([] {
    Matrix2 m;
    m(0, 0) = 1.0;
    return m;
  }());
  for (int i = 0; i < 64; ++i) {
    const double phi = 2.0 * M_PI * i / 64.0;
    const auto p = error_probabilities(canonical_kraus_set(theta, phi), h);
    const auto q =
        error_probabilities(canonical_kraus_set(theta, phi + M_PI), h);
    REQUIRE(p[1] == Approx(q[1]).margin(1e-12));
  }
}

TEST_CASE("single-scattering probability matches the closed form", "[kraus]") {
  const DensityMatrix2 mixed = DensityMatrix2::maximally_mixed();
  for (int i = 0; i <= 200; ++i) {
    const double theta = M_PI * i / 200.0;
    const double p = single_scatter_probability(
        ScatteringGeometry::canonical(theta, 1.3), mixed);
    REQUIRE(p == Approx(closed_form_single_unpolarized(theta)).margin(1e-14));
  }
  REQUIRE(single_scatter_probability(ScatteringGeometry::canonical(0.0, 0.0),
                                     mixed) == Approx(1.0).margin(1e-15));
}

TEST_CASE("unpolarized probabilities are azimuth covariant", "[kraus]") {
  const DensityMatrix2 mixed = DensityMatrix2::maximally_mixed();
  const double theta = deg_to_rad(82.0);
  const auto ref = error_probabilities(canonical_kraus_set(theta, 0.0), mixed);
  for (int i = 1; i < 48; ++i) {
    const double phi = 2.0 * M_PI * i / 48.0;
    const auto p = error_probabilities(canonical_kraus_set(theta, phi), mixed);
    for (std::size_t l = 0; l < 3; ++l)
      REQUIRE(p[l] == Approx(ref[l]).margin(1e-12));
  }
}

TEST_CASE("Klein-Nishina oracle endpoint values", "[kraus]") {
  REQUIRE(klein_nishina_unpolarized(0.0) == Approx(2.0).margin(1e-15));
  REQUIRE(klein_nishina_unpolarized(M_PI) ==
          Approx(10.0 / 27.0).margin(1e-15));
  REQUIRE(klein_nishina(0.0, std::nullopt) == Approx(2.0).margin(1e-15));
}

TEST_CASE("Kraus route equals half the unpolarized Klein-Nishina", "[kraus]") {
  const DensityMatrix2 mixed = DensityMatrix2::maximally_mixed();
  for (int i = 0; i <= 1000; ++i) {
    const double theta = M_PI * i / 1000.0;
    const double kraus_route = single_scatter_probability(
        ScatteringGeometry::canonical(theta, 0.6), mixed);
    REQUIRE(std::abs(kraus_route - 0.5 * klein_nishina_unpolarized(theta)) <
            1e-12);
  }
}

TEST_CASE("H-state probability equals half the polarized Klein-Nishina", "[kraus]") {
  // For |H> scattered at azimuth phi_a the polarization-plane angle is
  // eta = pi/2 - phi_a in the oracle convention.
  const DensityMatrix2 h = DensityMatrix2::make([] {
    Matrix2 m;
    m(0, 0) = 1.0;
    return m;
  }());
  const double theta = deg_to_rad(82.0);
  for (int i = 0; i < 97; ++i) {
    const double phi = 2.0 * M_PI * i / 97.0;
    const double p = single_scatter_probability(
        ScatteringGeometry::canonical(theta, phi), h);
    REQUIRE(std::abs(p - 0.5 * klein_nishina_polarized(theta,
                                                       M_PI / 2.0 - phi)) <
            1e-12);
  }
}

TEST_CASE("general-frame unpolarized probability is Klein-Nishina of the open angle", "[kraus]") {
  RngStream rng(48, 0);
  const DensityMatrix2 mixed = DensityMatrix2::maximally_mixed();
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = random_frame(rng);
    const double theta_open =
        std::acos(std::clamp(g.direction_cosine(), -1.0, 1.0));
    REQUIRE(std::abs(single_scatter_probability(g, mixed) -
                     0.5 * klein_nishina_unpolarized(theta_open)) < 1e-12);
  }
}

TEST_CASE("extremal pure probabilities", "[kraus]") {
  const double theta = deg_to_rad(82.0);
  const auto set = canonical_kraus_set(theta, 0.8);
  const double c = std::cos(theta);

  const auto [lo1, hi1] = extremal_pure_probabilities(set, 1);
  REQUIRE(lo1 == Approx(closed_form_p1(theta)).margin(1e-12));
  REQUIRE(hi1 == Approx(closed_form_p1(theta)).margin(1e-12));

  const auto [lo2, hi2] = extremal_pure_probabilities(set, 2);
  REQUIRE(lo2 == Approx(c * c / ((2.0 - c) * (2.0 - c))).margin(1e-12));
  REQUIRE(hi2 == Approx(1.0 / ((2.0 - c) * (2.0 - c))).margin(1e-12));

  const auto coeff = CanonicalK3Coefficients::from_theta(theta);
  const auto [lo3, hi3] = extremal_pure_probabilities(set, 3);
  REQUIRE(lo3 ==
          Approx(1.0 - coeff.mean_survival - coeff.modulation).margin(1e-12));
  REQUIRE(hi3 ==
          Approx(1.0 - coeff.mean_survival + coeff.modulation).margin(1e-12));

  const auto forward = canonical_kraus_set(0.0, 0.0);
  const auto [flo, fhi] = extremal_pure_probabilities(forward, 2);
  REQUIRE(flo == Approx(1.0).margin(1e-12));
  REQUIRE(fhi == Approx(1.0).margin(1e-12));

  REQUIRE_THROWS_AS(extremal_pure_probabilities(set, 4), contract_error);
}

TEST_CASE("pure-state probabilities never leave the eigenvalue envelope", "[kraus]") {
  const auto set = canonical_kraus_set(deg_to_rad(82.0), 0.8);
  std::array<std::pair<double, double>, 3> bounds;
  for (std::size_t l = 1; l <= 3; ++l)
    bounds[l - 1] = extremal_pure_probabilities(set, l);
  RngStream rng(49, 0);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto p = error_probabilities(set, random_pure_state<2>(rng));
    for (std::size_t l = 0; l < 3; ++l) {
      REQUIRE(p[l] >= bounds[l].first - 1e-10);
      REQUIRE(p[l] <= bounds[l].second + 1e-10);
    }
  }
}

TEST_CASE("three-operator Kraus mixing preserves the channel", "[kraus]") {
  RngStream rng(50, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_canonical(rng);
    const auto set = canonical_kraus_set(g.theta_a(), g.phi_a());
    const auto mixed = mix_kraus_set(set, haar_unitary<3>(rng));
    REQUIRE(mixed.completeness_defect() < 1e-10);

    const DensityMatrix2 rho = random_pure_state<2>(rng);
    Matrix2 out_ref, out_mixed;
    for (const auto& k : set.ops) out_ref += k * rho.matrix() * k.adjoint();
    for (const auto& f : mixed.ops)
      out_mixed += f * rho.matrix() * f.adjoint();
    REQUIRE((out_ref - out_mixed).frobenius_norm() < 1e-10);
  }
}

TEST_CASE("accessible-pair mixing preserves the spatial probability", "[kraus]") {
  RngStream rng(51, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_canonical(rng);
    const auto pair = accessible_pair(g);
    const auto mixed = mix_kraus_set(pair, haar_unitary<2>(rng));
    const DensityMatrix2 rho = random_pure_state<2>(rng);

    double p_ref = 0.0, p_mixed = 0.0;
    for (const auto& k : pair.ops)
      p_ref += (k * rho.matrix() * k.adjoint()).trace().real();
    for (const auto& f : mixed.ops)
      p_mixed += (f * rho.matrix() * f.adjoint()).trace().real();
    REQUIRE(p_ref == Approx(single_scatter_probability(g, rho)).margin(1e-13));
    REQUIRE(std::abs(p_ref - p_mixed) < 1e-10);
  }
}

TEST_CASE("mix_kraus_set rejects mismatched tables", "[kraus]") {
  const auto pair = accessible_pair(ScatteringGeometry::canonical(1.0, 0.0));
  RngStream rng(52, 0);
  REQUIRE_THROWS_AS(mix_kraus_set(pair, haar_unitary<3>(rng)), contract_error);
}

TEST_CASE("KrausSet validation honors the completeness contract", "[kraus]") {
  const auto g = ScatteringGeometry::canonical(1.2, 0.5);
  REQUIRE_NOTHROW(canonical_kraus_set(g.theta_a(), g.phi_a()).validate());
  REQUIRE_NOTHROW(general_kraus_set(g).validate());
  REQUIRE_NOTHROW(accessible_pair(g).validate());

  // dropping an operator from a full set breaks completeness
  KrausSet broken = canonical_kraus_set(g.theta_a(), g.phi_a());
  broken.ops.pop_back();
  REQUIRE_THROWS_AS(broken.validate(), contract_error);

  // an overcomplete pair fails the sub-channel PSD contract
  KrausSet overweight = accessible_pair(g);
  overweight.ops.push_back(Matrix2::identity());
  REQUIRE_THROWS_AS(overweight.validate(), contract_error);
}

TEST_CASE("unpolarized loss peaks at acos(1 - sqrt 2)", "[kraus]") {
  // The closed form puts the maximum of p3 at cos(theta) = 1 - sqrt(2)
  // with value 2 (sqrt 2 - 1) ~ 0.8284, i.e. around 114.5 degrees.
  double best = -1.0, arg = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double theta = M_PI * i / 200000.0;
    const double p3 = 1.0 - closed_form_single_unpolarized(theta);
    if (p3 > best) {
      best = p3;
      arg = theta;
    }
  }
  REQUIRE(best == Approx(2.0 * (std::sqrt(2.0) - 1.0)).margin(1e-9));
  REQUIRE(std::cos(arg) == Approx(1.0 - std::sqrt(2.0)).margin(1e-4));
  // and the implementation agrees with the closed form at the peak
  const auto p = error_probabilities(canonical_kraus_set(arg, 0.0),
                                     DensityMatrix2::maximally_mixed());
  REQUIRE(p[2] == Approx(best).margin(1e-12));
}
