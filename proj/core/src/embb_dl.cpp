/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "fogran/embb_dl.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fogran/errors.hpp"
#include "fogran/fronthaul.hpp"

namespace fogran {

namespace {

constexpr int kMaxFixedPointIters = 50;
constexpr double kFixedPointTol = 1e-10;
constexpr double kPowerSlackTol = -1e-9;
constexpr double kResidualTol = 1e-9;

Eigen::MatrixXd row_powers(const std::vector<Eigen::MatrixXcd>& beams) {
  const int cells = static_cast<int>(beams[0].rows());
  const int n_f = static_cast<int>(beams.size());
  Eigen::MatrixXd r(cells, n_f);
  for (int f = 0; f < n_f; ++f)
    for (int k = 0; k < cells; ++k) r(k, f) = beams[f].row(k).squaredNorm();
  return r;
}

// Solves each EN's rate-distortion condition for its quantization noise
// given the current beam row powers.
Eigen::VectorXd solve_noise_for_rows(const Eigen::MatrixXd& rows,
                                     double capacity, double time_share,
                                     double* max_residual) {
  const int cells = static_cast<int>(rows.rows());
  const int n_f = static_cast<int>(rows.cols());
  Eigen::VectorXd sigma2(cells);
  double worst = 0.0;
  for (int k = 0; k < cells; ++k) {
    ReceivedPowerTerms terms(n_f);
    for (int f = 0; f < n_f; ++f) terms[f] = {{1.0, rows(k, f)}};
    const auto sol = solve_quant_noise(terms, capacity, time_share);
    sigma2(k) = sol.sigma2;
    worst = std::max(worst, sol.residual);
  }
  if (max_residual) *max_residual = worst;
  return sigma2;
}

struct DlCoupling {
  // contrib[m](k, j): what EN m alone delivers of beam j at user k.
  std::vector<Eigen::MatrixXcd> contrib;
  // |h_{k,j}|^2 for the quantization-noise leakage terms.
  Eigen::MatrixXd gains2;
};

DlCoupling couple(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& beams) {
  const int cells = static_cast<int>(h.rows());
  DlCoupling c;
  c.contrib.resize(cells);
  for (int m = 0; m < cells; ++m) {
    c.contrib[m].resize(cells, cells);
    for (int k = 0; k < cells; ++k)
      for (int j = 0; j < cells; ++j)
        c.contrib[m](k, j) = h(k, m) * beams(m, j);
  }
  c.gains2 = h.cwiseAbs2();
  return c;
}

// Sum-rate over cells for one erasure pattern: erased ENs transmit the
// URLLC packet at full power instead of their beam row.
double dl_punctured_pattern_rate(const DlCoupling& c,
                                 const Eigen::VectorXd& sigma2,
                                 double en_power, std::uint64_t pattern) {
  const int cells = static_cast<int>(sigma2.size());
  Eigen::MatrixXcd received = Eigen::MatrixXcd::Zero(cells, cells);
  for (int m = 0; m < cells; ++m)
    if (!(pattern & (std::uint64_t{1} << m))) received += c.contrib[m];

  double rate = 0.0;
  for (int k = 0; k < cells; ++k) {
    const double signal = std::norm(received(k, k));
    double noise = 1.0;
    for (int j = 0; j < cells; ++j) {
      const double active = (pattern & (std::uint64_t{1} << j)) ? 1.0 : 0.0;
      noise += c.gains2(k, j) *
               ((1.0 - active) * sigma2(j) + active * en_power);
      if (j != k) noise += std::norm(received(k, j));
    }
    rate += std::log2(1.0 + signal / noise);
  }
  return rate;
}

// Sum-rate over cells for one activation pattern: active ENs shrink their
// beam row to the residual power share and superpose the URLLC packet.
double dl_superposition_pattern_rate(const DlCoupling& c,
                                     const Eigen::VectorXd& sigma2,
                                     double urllc_power, double share,
                                     std::uint64_t pattern) {
  const int cells = static_cast<int>(sigma2.size());
  Eigen::VectorXd weight(cells);
  for (int m = 0; m < cells; ++m) {
    const double active = (pattern & (std::uint64_t{1} << m)) ? 1.0 : 0.0;
    weight(m) = 1.0 + active * (share - 1.0);
  }
  Eigen::MatrixXcd received = Eigen::MatrixXcd::Zero(cells, cells);
  for (int m = 0; m < cells; ++m) received += weight(m) * c.contrib[m];

  double rate = 0.0;
  for (int k = 0; k < cells; ++k) {
    const double signal = std::norm(received(k, k));
    double noise = 1.0;
    for (int j = 0; j < cells; ++j) {
      const double active = (pattern & (std::uint64_t{1} << j)) ? 1.0 : 0.0;
      noise += c.gains2(k, j) * (weight(j) * sigma2(j) + active * urllc_power);
      if (j != k) noise += std::norm(received(k, j));
    }
    rate += std::log2(1.0 + signal / noise);
  }
  return rate;
}

void check_enumerable(int cells) {
  if (cells > kMaxEnumeratedCells)
    throw InvalidParameterError(
        "cells: exact activation enumeration supports at most " +
        std::to_string(kMaxEnumeratedCells) + " cells; use the sampled variant");
}

}  // namespace

Precoder design_precoder(const std::vector<Eigen::MatrixXcd>& embb,
                         double en_power, double fronthaul_capacity,
                         double time_share) {
  if (embb.empty())
    throw InvalidParameterError("embb: need at least one channel matrix");
  if (en_power <= 0.0)
    throw InvalidParameterError("en_power: must be positive");
  if (fronthaul_capacity <= 0.0)
    throw InvalidParameterError("fronthaul_capacity: must be positive");
  if (time_share <= 0.0 || time_share > 1.0)
    throw InvalidParameterError("time_share: must lie in (0,1]");

  const int cells = static_cast<int>(embb[0].rows());
  const int n_f = static_cast<int>(embb.size());

  Precoder pre;
  pre.beams.reserve(n_f);
  const double reg = static_cast<double>(cells) / en_power;
  for (int f = 0; f < n_f; ++f) {
    const Eigen::MatrixXcd& h = embb[f];
    Eigen::MatrixXcd gram = h * h.adjoint();
    gram += reg * Eigen::MatrixXcd::Identity(cells, cells);
    pre.beams.push_back(h.adjoint() * gram.inverse());
  }

  // Start each channel at the single-channel fixed point of the binding EN:
  // with flat rows, power P * (1 - 2^(-C/share)) plus its solved noise meets
  // the budget with equality.
  const double capacity_ratio =
      std::exp2(fronthaul_capacity / time_share);
  const double target_row = en_power * (1.0 - 1.0 / capacity_ratio);
  Eigen::MatrixXd rows = row_powers(pre.beams);
  for (int f = 0; f < n_f; ++f) {
    const double top = rows.col(f).maxCoeff();
    const double scale = std::sqrt(target_row / top);
    pre.beams[f] *= scale;
    rows.col(f) *= scale * scale;
  }

  // Alternate noise solves with a damped common rescale per channel.  The
  // damping exponent offsets the sensitivity of the solved noise to the row
  // power, which grows as the capacity per forwarded sample shrinks.
  const double sensitivity = 1.0 / (capacity_ratio - 1.0);
  const double damping = 1.0 / (1.0 + sensitivity);
  int iter = 0;
  for (; iter < kMaxFixedPointIters; ++iter) {
    const Eigen::VectorXd sigma2 = solve_noise_for_rows(
        rows, fronthaul_capacity, time_share, nullptr);
    double change = 0.0;
    for (int f = 0; f < n_f; ++f) {
      double scale2 = std::numeric_limits<double>::infinity();
      for (int k = 0; k < cells; ++k) {
        const double headroom = en_power - sigma2(k);
        scale2 = std::min(scale2, headroom > 0.0
                                      ? headroom / rows(k, f)
                                      : 0.25);
      }
      scale2 = std::pow(scale2, damping);
      pre.beams[f] *= std::sqrt(scale2);
      rows.col(f) *= scale2;
      change = std::max(change, std::abs(scale2 - 1.0));
    }
    if (change < kFixedPointTol) break;
  }
  pre.iterations = iter;

  // Certify: the noise must satisfy the fronthaul condition for the final
  // beams, and every EN must stay inside its power budget.  A downscale-only
  // projection strictly reduces the re-solved noise, so one extra pass
  // restores positive slack whenever the loop left a violation.
  for (int pass = 0; pass < 4; ++pass) {
    pre.sigma2 = solve_noise_for_rows(rows, fronthaul_capacity, time_share,
                                      &pre.fronthaul_residual);
    double slack = std::numeric_limits<double>::infinity();
    for (int f = 0; f < n_f; ++f)
      for (int k = 0; k < cells; ++k)
        slack = std::min(slack, en_power - rows(k, f) - pre.sigma2(k));
    pre.power_slack = slack;
    if (slack >= 0.0) break;
    for (int f = 0; f < n_f; ++f) {
      double scale2 = 1.0;
      for (int k = 0; k < cells; ++k) {
        const double headroom = en_power - pre.sigma2(k);
        if (headroom <= 0.0) {
          scale2 = 0.25;
          break;
        }
        scale2 = std::min(scale2, headroom / rows(k, f));
      }
      pre.beams[f] *= std::sqrt(scale2);
      rows.col(f) *= scale2;
    }
  }

  if (pre.power_slack < kPowerSlackTol ||
      pre.fronthaul_residual > kResidualTol)
    throw PrecoderConvergenceError(
        "precoder fixed point failed to certify: power slack " +
            std::to_string(pre.power_slack) + ", fronthaul residual " +
            std::to_string(pre.fronthaul_residual),
        pre.power_slack, pre.fronthaul_residual);
  return pre;
}

double rate_dl_oma(const std::vector<Eigen::MatrixXcd>& embb,
                   const Precoder& precoder, int access_latency) {
  if (access_latency < 2)
    throw InvalidParameterError(
        "access_latency: orthogonal sharing needs at least 2 mini-slots");
  const int cells = static_cast<int>(embb[0].rows());
  const int n_f = static_cast<int>(embb.size());

  double sum = 0.0;
  for (int f = 0; f < n_f; ++f) {
    const Eigen::MatrixXcd received = embb[f] * precoder.beams[f];
    const Eigen::MatrixXd gains2 = embb[f].cwiseAbs2();
    for (int k = 0; k < cells; ++k) {
      double noise = 1.0 + gains2.row(k).dot(precoder.sigma2);
      for (int j = 0; j < cells; ++j)
        if (j != k) noise += std::norm(received(k, j));
      sum += std::log2(1.0 + std::norm(received(k, k)) / noise);
    }
  }
  const double share = 1.0 - 1.0 / static_cast<double>(access_latency);
  return share * sum / (static_cast<double>(cells) * n_f);
}

double rate_dl_punctured(const std::vector<Eigen::MatrixXcd>& embb,
                         const Precoder& precoder, double en_power,
                         double activation) {
  const int cells = static_cast<int>(embb[0].rows());
  check_enumerable(cells);
  if (activation < 0.0 || activation > 1.0)
    throw InvalidParameterError("activation: must lie in [0,1]");
  const int n_f = static_cast<int>(embb.size());
  const auto patterns = std::uint64_t{1} << cells;

  double sum = 0.0;
  for (int f = 0; f < n_f; ++f) {
    const DlCoupling c = couple(embb[f], precoder.beams[f]);
    for (std::uint64_t p = 0; p < patterns; ++p) {
      const double w = detail::pattern_weight(p, cells, activation);
      if (w == 0.0) continue;
      sum += w * dl_punctured_pattern_rate(c, precoder.sigma2, en_power, p);
    }
  }
  return sum / (static_cast<double>(cells) * n_f);
}

double rate_dl_superposition(const std::vector<Eigen::MatrixXcd>& embb,
                             const Precoder& precoder, double en_power,
                             double urllc_power, double activation) {
  const int cells = static_cast<int>(embb[0].rows());
  check_enumerable(cells);
  if (activation < 0.0 || activation > 1.0)
    throw InvalidParameterError("activation: must lie in [0,1]");
  if (urllc_power <= 0.0 || urllc_power > en_power)
    throw InvalidParameterError(
        "urllc_power: must lie in (0, en_power]");
  const int n_f = static_cast<int>(embb.size());
  const auto patterns = std::uint64_t{1} << cells;
  const double share = 1.0 - urllc_power / en_power;

  double sum = 0.0;
  for (int f = 0; f < n_f; ++f) {
    const DlCoupling c = couple(embb[f], precoder.beams[f]);
    for (std::uint64_t p = 0; p < patterns; ++p) {
      const double w = detail::pattern_weight(p, cells, activation);
      if (w == 0.0) continue;
      sum += w * dl_superposition_pattern_rate(c, precoder.sigma2,
                                               urllc_power, share, p);
    }
  }
  return sum / (static_cast<double>(cells) * n_f);
}

SampledRate rate_dl_punctured_sampled(const std::vector<Eigen::MatrixXcd>& embb,
                                      const Precoder& precoder,
                                      double en_power, double activation,
                                      int samples, RandomStream& rng) {
  if (samples < 2)
    throw InvalidParameterError("samples: need at least two samples");
  const int cells = static_cast<int>(embb[0].rows());
  const int n_f = static_cast<int>(embb.size());
  std::vector<DlCoupling> couplings;
  couplings.reserve(n_f);
  for (int f = 0; f < n_f; ++f)
    couplings.push_back(couple(embb[f], precoder.beams[f]));

  double mean = 0.0;
  double m2 = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::uint64_t pattern = 0;
    for (int k = 0; k < cells; ++k)
      if (rng.bernoulli(activation)) pattern |= std::uint64_t{1} << k;
    double value = 0.0;
    for (int f = 0; f < n_f; ++f)
      value += dl_punctured_pattern_rate(couplings[f], precoder.sigma2,
                                         en_power, pattern);
    value /= static_cast<double>(cells) * n_f;
    const double delta = value - mean;
    mean += delta / (s + 1);
    m2 += delta * (value - mean);
  }
  return {mean, std::sqrt(m2 / (samples - 1.0) / samples)};
}

SampledRate rate_dl_superposition_sampled(
    const std::vector<Eigen::MatrixXcd>& embb, const Precoder& precoder,
    double en_power, double urllc_power, double activation, int samples,
    RandomStream& rng) {
  if (samples < 2)
    throw InvalidParameterError("samples: need at least two samples");
  const int cells = static_cast<int>(embb[0].rows());
  const int n_f = static_cast<int>(embb.size());
  const double share = 1.0 - urllc_power / en_power;
  std::vector<DlCoupling> couplings;
  couplings.reserve(n_f);
  for (int f = 0; f < n_f; ++f)
    couplings.push_back(couple(embb[f], precoder.beams[f]));

  double mean = 0.0;
  double m2 = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::uint64_t pattern = 0;
    for (int k = 0; k < cells; ++k)
      if (rng.bernoulli(activation)) pattern |= std::uint64_t{1} << k;
    double value = 0.0;
    for (int f = 0; f < n_f; ++f)
      value += dl_superposition_pattern_rate(couplings[f], precoder.sigma2,
                                             urllc_power, share, pattern);
    value /= static_cast<double>(cells) * n_f;
    const double delta = value - mean;
    mean += delta / (s + 1);
    m2 += delta * (value - mean);
  }
  return {mean, std::sqrt(m2 / (samples - 1.0) / samples)};
}

}  // namespace fogran
