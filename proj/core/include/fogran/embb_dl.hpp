/*
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef FOGRAN_EMBB_DL_HPP
#define FOGRAN_EMBB_DL_HPP

#include <Eigen/Dense>
#include <vector>

#include "fogran/embb_ul.hpp"
#include "fogran/model.hpp"
#include "fogran/rng.hpp"

namespace fogran {

/// Cloud precoder plus the per-EN quantization noise the fronthaul can
/// afford for it.  beams[f] column j is the beam serving the user of cell j
/// on channel f; row k is what EN k transmits.
struct Precoder {
  std::vector<Eigen::MatrixXcd> beams;
  Eigen::VectorXd sigma2;
  /// min over (EN, channel) of power budget - row power - sigma2.
  double power_slack = 0.0;
  /// max over ENs of the fronthaul capacity residual, bit/s/Hz.
  double fronthaul_residual = 0.0;
  int iterations = 0;
};

/// Designs regularized zero-forcing beams and jointly feasible quantization
/// noise: alternates solving each EN's fronthaul condition for sigma2 with a
/// common per-channel rescale keeping row power + sigma2 inside the EN
/// budget.  time_share is the fraction of mini-slots whose samples traverse
/// the fronthaul.  Certifies power_slack >= -1e-9 and fronthaul_residual
/// <= 1e-9 on output, else throws PrecoderConvergenceError.
Precoder design_precoder(const std::vector<Eigen::MatrixXcd>& embb,
                         double en_power, double fronthaul_capacity,
                         double time_share);

/// Per-cell eMBB sum-rate of downlink orthogonal sharing.
double rate_dl_oma(const std::vector<Eigen::MatrixXcd>& embb,
                   const Precoder& precoder, int access_latency);

/// Per-cell eMBB sum-rate when ENs blank mini-slots to serve URLLC at full
/// power, averaged exactly over per-EN activation patterns.
double rate_dl_punctured(const std::vector<Eigen::MatrixXcd>& embb,
                         const Precoder& precoder, double en_power,
                         double activation);

/// Per-cell eMBB sum-rate when active ENs superpose URLLC on a power-reduced
/// eMBB signal, averaged exactly over per-EN activation patterns.
double rate_dl_superposition(const std::vector<Eigen::MatrixXcd>& embb,
                             const Precoder& precoder, double en_power,
                             double urllc_power, double activation);

/// Monte-Carlo counterparts averaging over sampled activation patterns.
SampledRate rate_dl_punctured_sampled(const std::vector<Eigen::MatrixXcd>& embb,
                                      const Precoder& precoder,
                                      double en_power, double activation,
                                      int samples, RandomStream& rng);
SampledRate rate_dl_superposition_sampled(
    const std::vector<Eigen::MatrixXcd>& embb, const Precoder& precoder,
    double en_power, double urllc_power, double activation, int samples,
    RandomStream& rng);

}  // namespace fogran

#endif  // FOGRAN_EMBB_DL_HPP
