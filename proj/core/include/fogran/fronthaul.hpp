/*
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef FOGRAN_FRONTHAUL_HPP
#define FOGRAN_FRONTHAUL_HPP

#include <Eigen/Dense>
#include <vector>

#include "fogran/channel.hpp"
#include "fogran/model.hpp"

namespace fogran {

/// Binary entropy in bits; 0 at p in {0,1}.
double binary_entropy(double p);

/// One additive component of the signal power quantized at an EN, with the
/// probability weight it carries when the power depends on random URLLC
/// activity.  Weights sum to one within each frequency channel.
struct WeightedPower {
  double weight = 1.0;
  double power = 0.0;
};

/// Per-frequency-channel weighted received powers entering the quantization
/// rate-distortion condition of one EN.
using ReceivedPowerTerms = std::vector<std::vector<WeightedPower>>;

struct QuantNoiseSolution {
  double sigma2 = 0.0;
  /// |achieved - target| capacity after the solve, bit/s/Hz.
  double residual = 0.0;
};

/// Solves for the unique quantization noise variance sigma2 > 0 with
///
///   prefactor * mean_f sum_i w_{f,i} log2(1 + T_{f,i} / sigma2) = capacity
///
/// by monotone bisection on a geometrically expanded bracket.  `prefactor`
/// is the fraction of mini-slots whose quantized samples traverse the
/// fronthaul.  Requires capacity > 0, prefactor in (0,1], all powers >= 0
/// and at least one positive.
QuantNoiseSolution solve_quant_noise(const ReceivedPowerTerms& terms,
                                     double capacity, double prefactor);

/// Quantization noise variances for all ENs in one frame.
struct QuantNoise {
  Eigen::VectorXd sigma2;
  double max_residual = 0.0;
};

/// Uplink orthogonal sharing: only eMBB mini-slots are forwarded, and the
/// quantized power excludes URLLC activity.
QuantNoise quant_noise_ul_oma(const ChannelDraw& draw,
                              const SystemConfig& config, int access_latency);

/// Uplink treat-as-noise: every mini-slot is forwarded and the quantized
/// power averages over URLLC activity, with the per-mini-slot URLLC gains of
/// the frame entering the expectation.
QuantNoise quant_noise_ul_tin(const ChannelDraw& draw,
                              const SystemConfig& config);

/// Uplink puncturing-style sharing: mini-slots are dropped independently with
/// probability erase_prob and the pattern is signaled over the fronthaul, so
/// the usable capacity shrinks by the signaling entropy per symbol.  Also
/// covers cancellation-based sharing via its smaller effective erase_prob.
/// Throws InfeasibleFronthaulError when the overhead exhausts the capacity.
QuantNoise quant_noise_ul_punctured(const ChannelDraw& draw,
                                    const SystemConfig& config,
                                    double erase_prob);

}  // namespace fogran

#endif  // FOGRAN_FRONTHAUL_HPP
