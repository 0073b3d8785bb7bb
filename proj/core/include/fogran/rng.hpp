/*
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef FOGRAN_RNG_HPP
#define FOGRAN_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace fogran {

/// Deterministic per-stream random source.  Stream identity is (seed, stream
/// index), so trial i always sees the same draws no matter which worker runs
/// it or how many trials surround it.  All variates are produced from raw
/// 64-bit engine output with fixed arithmetic; nothing is delegated to
/// implementation-defined distribution objects.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream)
      : engine_(mix(mix(seed) ^ mix(stream + 0x9e3779b97f4a7c15ull))) {}

  /// Uniform draw on (0,1].  Consumes exactly one engine word.
  double uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.  Consumes exactly two engine words.
  double standard_normal() {
    const double u = uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) *
           std::cos(2.0 * 3.14159265358979323846 * v);
  }

  /// Circularly symmetric complex normal with the given variance.
  std::complex<double> complex_normal(double variance) {
    const double scale = std::sqrt(variance * 0.5);
    const double re = standard_normal();
    const double im = standard_normal();
    return {scale * re, scale * im};
  }

  /// Bernoulli draw.  Always consumes exactly one engine word so draw
  /// sequences stay aligned when only the success probability changes.
  bool bernoulli(double p) { return uniform() <= p; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace fogran

#endif  // FOGRAN_RNG_HPP
