/*
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "ckn/matrix.hpp"

namespace ckn {

/**
 * Seeded, stream-indexed random source.
 *
 * Identical (seed, stream) pairs reproduce identical sample sequences on
 * every run; distinct streams are independent, which keeps parallel
 * Monte-Carlo scans deterministic regardless of worker count. Callers
 * assign one stream per independent unit of work (e.g. per record).
 */
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed & 0xffffffffu),
        static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream & 0xffffffffu),
        static_cast<std::uint32_t>(stream >> 32),
    };
    engine_.seed(seq);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// New stream with the same seed; caller manages stream indices.
  RngStream substream(std::uint64_t stream) const {
    return RngStream(seed_, stream);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// Box-Muller pair of independent standard normals.
  std::pair<double, double> gaussian_pair() {
    const double u1 = 1.0 - uniform01(); // (0, 1], keeps the log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

  /// Standard complex normal (unit variance per real component).
  complexd complex_gaussian() {
    const auto [re, im] = gaussian_pair();
    return {re, im};
  }

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

/**
 * Haar-distributed unitary via QR of a complex Ginibre matrix.
 *
 * Modified Gram-Schmidt with a re-orthogonalization pass; the R diagonal
 * is real positive by construction, which is the phase normalization that
 * makes the distribution exactly Haar.
 */
template <std::size_t N>
Matrix<N> haar_unitary(RngStream& rng) {
  Matrix<N> g;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) g(i, j) = rng.complex_gaussian();

  Matrix<N> q;
  for (std::size_t col = 0; col < N; ++col) {
    std::array<complexd, N> v{};
    for (std::size_t r = 0; r < N; ++r) v[r] = g(r, col);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < col; ++k) {
        complexd proj = 0.0;
        for (std::size_t r = 0; r < N; ++r) proj += std::conj(q(r, k)) * v[r];
        for (std::size_t r = 0; r < N; ++r) v[r] -= proj * q(r, k);
      }
    }
    double norm = 0.0;
    for (const auto& z : v) norm += std::norm(z);
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < N; ++r) q(r, col) = v[r] / norm;
  }
  return q;
}

/// Haar-random pure state vector (normalized complex Gaussian).
template <std::size_t N>
Vector<N> haar_vector(RngStream& rng) {
  Vector<N> v;
  for (std::size_t i = 0; i < N; ++i) v[i] = rng.complex_gaussian();
  return v.normalized();
}

} // namespace ckn
