/*
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef FOGRAN_EMBB_UL_HPP
#define FOGRAN_EMBB_UL_HPP

#include <Eigen/Dense>
#include <vector>

#include "fogran/channel.hpp"
#include "fogran/model.hpp"
#include "fogran/rng.hpp"

namespace fogran {

/// Largest cell count for which activation patterns are enumerated exactly;
/// beyond it the *_sampled variants must be used.
inline constexpr int kMaxEnumeratedCells = 16;

/// Rate estimate whose activation average was sampled instead of enumerated.
struct SampledRate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Per-cell eMBB sum-rate of uplink orthogonal sharing: joint BBU decoding
/// across ENs on the eMBB share of the frame.  sigma2 holds the per-EN
/// quantization noise variances.
double rate_ul_oma(const std::vector<Eigen::MatrixXcd>& embb,
                   const Eigen::VectorXd& sigma2, double embb_power,
                   int access_latency);

/// Per-cell eMBB sum-rate when URLLC interference is treated as noise,
/// averaged exactly over activation patterns and over the per-mini-slot
/// URLLC gains of the frame.
double rate_ul_tin(const ChannelDraw& draw, const Eigen::VectorXd& sigma2,
                   const SystemConfig& config);

/// Per-cell eMBB sum-rate when ENs blank mini-slots carrying URLLC traffic,
/// averaged exactly over the independent per-EN erasure patterns.  Covers
/// cancellation-based sharing through its residual erase probability.
double rate_ul_punctured(const std::vector<Eigen::MatrixXcd>& embb,
                         const Eigen::VectorXd& sigma2, double embb_power,
                         double erase_prob);

/// Monte-Carlo counterparts averaging over sampled activation patterns.
SampledRate rate_ul_tin_sampled(const ChannelDraw& draw,
                                const Eigen::VectorXd& sigma2,
                                const SystemConfig& config, int samples,
                                RandomStream& rng);
SampledRate rate_ul_punctured_sampled(const std::vector<Eigen::MatrixXcd>& embb,
                                      const Eigen::VectorXd& sigma2,
                                      double embb_power, double erase_prob,
                                      int samples, RandomStream& rng);

namespace detail {

/// log2 det(I + scale * D^{-1/2} H_S H_S^H D^{-1/2}) where S is the set of
/// rows with keep_mask bit set and D = diag(d) restricted to S.
double logdet_capacity(const Eigen::MatrixXcd& h, const Eigen::VectorXd& d,
                       double scale, std::uint64_t keep_mask);

/// Probability of the activation bit pattern under i.i.d. Bernoulli(p) bits.
double pattern_weight(std::uint64_t pattern, int bits, double p);

}  // namespace detail

}  // namespace fogran

#endif  // FOGRAN_EMBB_UL_HPP
