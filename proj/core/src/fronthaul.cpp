/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "fogran/fronthaul.hpp"

#include <cmath>
#include <string>

namespace fogran {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr int kMaxBisectIters = 300;

double achieved_capacity(const ReceivedPowerTerms& terms, double prefactor,
                         double sigma2) {
  double mean = 0.0;
  for (const auto& channel : terms) {
    double acc = 0.0;
    for (const auto& term : channel)
      acc += term.weight * std::log2(1.0 + term.power / sigma2);
    mean += acc;
  }
  return prefactor * mean / static_cast<double>(terms.size());
}

}  // namespace

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0)
    throw InvalidParameterError("p: must lie in [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

QuantNoiseSolution solve_quant_noise(const ReceivedPowerTerms& terms,
                                     double capacity, double prefactor) {
  if (capacity <= 0.0)
    throw InvalidParameterError("capacity: must be positive");
  if (prefactor <= 0.0 || prefactor > 1.0)
    throw InvalidParameterError("prefactor: must lie in (0,1]");
  if (terms.empty())
    throw InvalidParameterError("terms: need at least one channel");
  bool any_positive = false;
  for (const auto& channel : terms)
    for (const auto& term : channel) {
      if (term.power < 0.0)
        throw InvalidParameterError("terms: powers must be non-negative");
      if (term.weight < 0.0)
        throw InvalidParameterError("terms: weights must be non-negative");
      any_positive = any_positive || (term.weight > 0.0 && term.power > 0.0);
    }
  if (!any_positive)
    throw InvalidParameterError(
        "terms: need at least one positive weighted power");

  // The capacity is strictly decreasing in sigma2, diverging as sigma2 -> 0
  // and vanishing as sigma2 -> inf, so a sign change always exists.  Expand
  // the bracket geometrically until it straddles the target.
  double lo = 1e-12;
  double hi = 1e12;
  while (achieved_capacity(terms, prefactor, lo) < capacity) lo *= 1e-2;
  while (achieved_capacity(terms, prefactor, hi) > capacity) hi *= 1e2;

  double mid = lo;
  double residual = 0.0;
  for (int i = 0; i < kMaxBisectIters; ++i) {
    mid = std::sqrt(lo * hi);
    const double value = achieved_capacity(terms, prefactor, mid);
    residual = std::abs(value - capacity);
    if (residual <= kResidualTol && i >= 40) break;
    if (value > capacity)
      lo = mid;
    else
      hi = mid;
    if (hi / lo - 1.0 < 1e-15) break;
  }
  return {mid, residual};
}

QuantNoise quant_noise_ul_oma(const ChannelDraw& draw,
                              const SystemConfig& config, int access_latency) {
  if (access_latency < 2)
    throw InvalidParameterError(
        "access_latency: orthogonal sharing needs at least 2 mini-slots");
  const int cells = config.cells;
  const int n_f = config.freq_channels;
  const double prefactor = 1.0 - 1.0 / static_cast<double>(access_latency);

  QuantNoise result;
  result.sigma2.resize(cells);
  for (int k = 0; k < cells; ++k) {
    ReceivedPowerTerms terms(n_f);
    for (int f = 0; f < n_f; ++f) {
      const double power =
          1.0 + config.embb_power * draw.embb[f].row(k).squaredNorm();
      terms[f] = {{1.0, power}};
    }
    const auto sol =
        solve_quant_noise(terms, config.fronthaul_capacity, prefactor);
    result.sigma2(k) = sol.sigma2;
    result.max_residual = std::max(result.max_residual, sol.residual);
  }
  return result;
}

QuantNoise quant_noise_ul_tin(const ChannelDraw& draw,
                              const SystemConfig& config) {
  const int cells = config.cells;
  const int n_f = config.freq_channels;
  const int slots = config.minislots;
  const double a = config.urllc_activation;

  QuantNoise result;
  result.sigma2.resize(cells);
  for (int k = 0; k < cells; ++k) {
    ReceivedPowerTerms terms(n_f);
    for (int f = 0; f < n_f; ++f) {
      const double base =
          1.0 + config.embb_power * draw.embb[f].row(k).squaredNorm();
      auto& channel = terms[f];
      channel.reserve(static_cast<std::size_t>(slots) + 1);
      // Idle mini-slots all quantize the same power; active ones add the
      // own-cell URLLC gain of their mini-slot.
      channel.push_back({1.0 - a, base});
      for (int t = 0; t < slots; ++t) {
        const double active =
            base + config.urllc_power * std::norm(draw.urllc[f](k, t));
        channel.push_back({a / static_cast<double>(slots), active});
      }
    }
    const auto sol = solve_quant_noise(terms, config.fronthaul_capacity, 1.0);
    result.sigma2(k) = sol.sigma2;
    result.max_residual = std::max(result.max_residual, sol.residual);
  }
  return result;
}

QuantNoise quant_noise_ul_punctured(const ChannelDraw& draw,
                                    const SystemConfig& config,
                                    double erase_prob) {
  if (erase_prob < 0.0 || erase_prob >= 1.0)
    throw InvalidParameterError("erase_prob: must lie in [0,1)");
  const int cells = config.cells;
  const int n_f = config.freq_channels;

  // The erasure pattern is signaled once per (mini-slot, channel) block of
  // ru_symbols * ru_subcarriers quantized symbols.
  const double overhead =
      binary_entropy(erase_prob) /
      (static_cast<double>(config.freq_channels) * config.ru_symbols *
       config.ru_subcarriers);
  const double effective = config.fronthaul_capacity - overhead;
  if (effective <= 0.0)
    throw InfeasibleFronthaulError(
        "activation signaling overhead " + std::to_string(overhead) +
        " exhausts the fronthaul capacity " +
        std::to_string(config.fronthaul_capacity));

  QuantNoise result;
  result.sigma2.resize(cells);
  for (int k = 0; k < cells; ++k) {
    ReceivedPowerTerms terms(n_f);
    for (int f = 0; f < n_f; ++f) {
      const double power =
          1.0 + config.embb_power * draw.embb[f].row(k).squaredNorm();
      terms[f] = {{1.0, power}};
    }
    const auto sol = solve_quant_noise(terms, effective, 1.0 - erase_prob);
    result.sigma2(k) = sol.sigma2;
    result.max_residual = std::max(result.max_residual, sol.residual);
  }
  return result;
}

}  // namespace fogran
