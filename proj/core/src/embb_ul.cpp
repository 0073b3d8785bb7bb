/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "fogran/embb_ul.hpp"

#include <cmath>

#include "fogran/errors.hpp"

namespace fogran {

namespace detail {

double logdet_capacity(const Eigen::MatrixXcd& h, const Eigen::VectorXd& d,
                       double scale, std::uint64_t keep_mask) {
  const int cells = static_cast<int>(h.rows());
  int kept = 0;
  for (int k = 0; k < cells; ++k)
    if (keep_mask & (1ull << k)) ++kept;
  if (kept == 0) return 0.0;

  // Rows outside the mask contribute identity rows to the determinant, so
  // the log-det reduces to the kept-row principal block.  Whitening by the
  // per-row noise keeps the matrix Hermitian positive definite.
  Eigen::MatrixXcd w(kept, h.cols());
  int row = 0;
  for (int k = 0; k < cells; ++k) {
    if (!(keep_mask & (1ull << k))) continue;
    w.row(row++) = h.row(k) / std::sqrt(d(k));
  }
  Eigen::MatrixXcd gram = scale * (w * w.adjoint());
  gram += Eigen::MatrixXcd::Identity(kept, kept);

  const Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw InvalidParameterError("logdet_capacity: matrix not positive definite");
  double logdet = 0.0;
  const auto& l = llt.matrixLLT();
  for (int k = 0; k < kept; ++k) logdet += std::log2(l(k, k).real());
  return 2.0 * logdet;
}

double pattern_weight(std::uint64_t pattern, int bits, double p) {
  double w = 1.0;
  for (int k = 0; k < bits; ++k)
    w *= (pattern & (1ull << k)) ? p : (1.0 - p);
  return w;
}

}  // namespace detail

namespace {

void check_enumerable(int cells) {
  if (cells > kMaxEnumeratedCells)
    throw InvalidParameterError(
        "cells: exact activation enumeration supports at most " +
        std::to_string(kMaxEnumeratedCells) + " cells; use the sampled variant");
}

// Noise-plus-interference diagonal seen by the BBU for one activation
// pattern in one (channel, mini-slot): quantization noise plus any active
// own-cell URLLC power.
Eigen::VectorXd tin_noise_diagonal(const ChannelDraw& draw,
                                   const Eigen::VectorXd& sigma2,
                                   double urllc_power, std::uint64_t pattern,
                                   int f, int t) {
  const int cells = static_cast<int>(sigma2.size());
  Eigen::VectorXd d(cells);
  for (int k = 0; k < cells; ++k) {
    d(k) = 1.0 + sigma2(k);
    if (pattern & (1ull << k))
      d(k) += urllc_power * std::norm(draw.urllc[f](k, t));
  }
  return d;
}

double tin_pattern_rate(const ChannelDraw& draw, const Eigen::VectorXd& sigma2,
                        const SystemConfig& config, std::uint64_t pattern,
                        int f, int t) {
  const Eigen::VectorXd d = tin_noise_diagonal(
      draw, sigma2, config.urllc_power, pattern, f, t);
  const auto full_mask =
      ((std::uint64_t{1} << config.cells) - 1);
  return detail::logdet_capacity(draw.embb[f], d, config.embb_power,
                                 full_mask);
}

}  // namespace

double rate_ul_oma(const std::vector<Eigen::MatrixXcd>& embb,
                   const Eigen::VectorXd& sigma2, double embb_power,
                   int access_latency) {
  if (access_latency < 2)
    throw InvalidParameterError(
        "access_latency: orthogonal sharing needs at least 2 mini-slots");
  const int cells = static_cast<int>(sigma2.size());
  const int n_f = static_cast<int>(embb.size());
  const auto full_mask = ((std::uint64_t{1} << cells) - 1);
  const Eigen::VectorXd d = sigma2.array() + 1.0;

  double sum = 0.0;
  for (int f = 0; f < n_f; ++f)
    sum += detail::logdet_capacity(embb[f], d, embb_power, full_mask);
  const double share = 1.0 - 1.0 / static_cast<double>(access_latency);
  return share * sum / (static_cast<double>(cells) * n_f);
}

double rate_ul_tin(const ChannelDraw& draw, const Eigen::VectorXd& sigma2,
                   const SystemConfig& config) {
  check_enumerable(config.cells);
  const int n_f = config.freq_channels;
  const int slots = config.minislots;
  const auto patterns = std::uint64_t{1} << config.cells;

  double sum = 0.0;
  for (int f = 0; f < n_f; ++f) {
    for (int t = 0; t < slots; ++t) {
      for (std::uint64_t p = 0; p < patterns; ++p) {
        const double w =
            detail::pattern_weight(p, config.cells, config.urllc_activation);
        if (w == 0.0) continue;
        sum += w * tin_pattern_rate(draw, sigma2, config, p, f, t);
      }
    }
  }
  return sum / (static_cast<double>(config.cells) * n_f * slots);
}

double rate_ul_punctured(const std::vector<Eigen::MatrixXcd>& embb,
                         const Eigen::VectorXd& sigma2, double embb_power,
                         double erase_prob) {
  const int cells = static_cast<int>(sigma2.size());
  check_enumerable(cells);
  if (erase_prob < 0.0 || erase_prob > 1.0)
    throw InvalidParameterError("erase_prob: must lie in [0,1]");
  const int n_f = static_cast<int>(embb.size());
  const auto patterns = std::uint64_t{1} << cells;
  const auto full_mask = ((std::uint64_t{1} << cells) - 1);
  const Eigen::VectorXd d = sigma2.array() + 1.0;

  double sum = 0.0;
  for (int f = 0; f < n_f; ++f) {
    for (std::uint64_t p = 0; p < patterns; ++p) {
      const double w = detail::pattern_weight(p, cells, erase_prob);
      if (w == 0.0) continue;
      sum += w * detail::logdet_capacity(embb[f], d, embb_power,
                                         full_mask & ~p);
    }
  }
  return sum / (static_cast<double>(cells) * n_f);
}

SampledRate rate_ul_tin_sampled(const ChannelDraw& draw,
                                const Eigen::VectorXd& sigma2,
                                const SystemConfig& config, int samples,
                                RandomStream& rng) {
  if (samples < 2)
    throw InvalidParameterError("samples: need at least two samples");
  const int n_f = config.freq_channels;
  const int slots = config.minislots;

  double mean = 0.0;
  double m2 = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::uint64_t pattern = 0;
    for (int k = 0; k < config.cells; ++k)
      if (rng.bernoulli(config.urllc_activation)) pattern |= 1ull << k;
    double value = 0.0;
    for (int f = 0; f < n_f; ++f)
      for (int t = 0; t < slots; ++t)
        value += tin_pattern_rate(draw, sigma2, config, pattern, f, t);
    value /= static_cast<double>(config.cells) * n_f * slots;
    const double delta = value - mean;
    mean += delta / (s + 1);
    m2 += delta * (value - mean);
  }
  const double variance = m2 / (samples - 1.0);
  return {mean, std::sqrt(variance / samples)};
}

SampledRate rate_ul_punctured_sampled(const std::vector<Eigen::MatrixXcd>& embb,
                                      const Eigen::VectorXd& sigma2,
                                      double embb_power, double erase_prob,
                                      int samples, RandomStream& rng) {
  if (samples < 2)
    throw InvalidParameterError("samples: need at least two samples");
  const int cells = static_cast<int>(sigma2.size());
  const int n_f = static_cast<int>(embb.size());
  const auto full_mask = ((std::uint64_t{1} << cells) - 1);
  const Eigen::VectorXd d = sigma2.array() + 1.0;

  double mean = 0.0;
  double m2 = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::uint64_t pattern = 0;
    for (int k = 0; k < cells; ++k)
      if (rng.bernoulli(erase_prob)) pattern |= 1ull << k;
    double value = 0.0;
    for (int f = 0; f < n_f; ++f)
      value += detail::logdet_capacity(embb[f], d, embb_power,
                                       full_mask & ~pattern);
    value /= static_cast<double>(cells) * n_f;
    const double delta = value - mean;
    mean += delta / (s + 1);
    m2 += delta * (value - mean);
  }
  const double variance = m2 / (samples - 1.0);
  return {mean, std::sqrt(variance / samples)};
}

}  // namespace fogran
