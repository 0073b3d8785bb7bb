/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "fogran/urllc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fogran {

namespace {

// pmf of Binomial(n, p) computed by upward recurrence; exact at p in {0,1}.
std::vector<double> binomial_pmf(int n, double p) {
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
  if (p <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p >= 1.0) {
    pmf[static_cast<std::size_t>(n)] = 1.0;
    return pmf;
  }
  pmf[0] = std::pow(1.0 - p, n);
  const double odds = p / (1.0 - p);
  for (int k = 0; k < n; ++k)
    pmf[k + 1] = pmf[k] * odds * static_cast<double>(n - k) / (k + 1);
  return pmf;
}

void check_budget_args(int access_latency, double activation,
                       double reliability) {
  if (access_latency < 1)
    throw InvalidParameterError("access_latency: must be at least 1");
  if (activation < 0.0 || activation > 1.0)
    throw InvalidParameterError("activation: must lie in [0,1]");
  if (reliability <= 0.0 || reliability >= 1.0)
    throw InvalidParameterError("reliability: must lie in (0,1)");
}

}  // namespace

ErrorBudget collision_budget_ul(int access_latency, double activation,
                                double reliability) {
  check_budget_args(access_latency, activation, reliability);
  const auto pmf = binomial_pmf(access_latency - 1, activation);
  // Any concurrent arrival in the window collides with the tagged packet.
  const double collision = 1.0 - pmf[0];
  if (collision >= reliability)
    throw InfeasibleBudgetError(
        "collision probability " + std::to_string(collision) +
        " already exceeds the reliability target " +
        std::to_string(reliability));
  ErrorBudget budget;
  budget.reliability = reliability;
  budget.access_loss = collision;
  budget.decode_weight = pmf[0];
  budget.decode_error = (reliability - collision) / pmf[0];
  return budget;
}

ErrorBudget blockage_budget_dl(int access_latency, double activation,
                               double reliability) {
  check_budget_args(access_latency, activation, reliability);
  const auto pmf = binomial_pmf(access_latency - 1, activation);
  // With n concurrent arrivals one of the n+1 queued packets is served, so
  // the tagged packet is blocked with probability n/(n+1) and decoded with
  // probability 1/(n+1).
  double blockage = 0.0;
  double decode_weight = 0.0;
  for (int n = 0; n < access_latency; ++n) {
    blockage += pmf[n] * n / (n + 1.0);
    decode_weight += pmf[n] / (n + 1.0);
  }
  if (blockage >= reliability)
    throw InfeasibleBudgetError(
        "blockage probability " + std::to_string(blockage) +
        " already exceeds the reliability target " +
        std::to_string(reliability));
  ErrorBudget budget;
  budget.reliability = reliability;
  budget.access_loss = blockage;
  budget.decode_weight = decode_weight;
  budget.decode_error = (reliability - blockage) / decode_weight;
  return budget;
}

Eigen::VectorXd urllc_sinr(const SchemeConfig& scheme, const ChannelDraw& draw,
                           int cell, int slot, const SystemConfig& config) {
  const int n_f = static_cast<int>(draw.urllc.size());
  Eigen::VectorXd sinr(n_f);
  for (int f = 0; f < n_f; ++f) {
    const double own = std::norm(draw.urllc[f](cell, slot));
    if (scheme.direction == Direction::kUplink) {
      if (scheme.is_oma()) {
        sinr(f) = own * config.urllc_power;
      } else {
        // eMBB uplink of every cell interferes at the decoding EN.
        const double interference =
            config.embb_power * draw.embb[f].row(cell).squaredNorm();
        sinr(f) = own * config.urllc_power / (1.0 + interference);
      }
    } else {
      if (scheme.multiplexing == Multiplexing::kNomaSuperposition) {
        const double residual = own * (config.en_power - config.urllc_power);
        sinr(f) = own * config.urllc_power / (1.0 + residual);
      } else {
        // Dedicated or punctured mini-slot: the EN spends its full power.
        sinr(f) = own * config.en_power;
      }
    }
  }
  return sinr;
}

double spectral_efficiency(const Eigen::VectorXd& sinr) {
  double sum = 0.0;
  for (Eigen::Index f = 0; f < sinr.size(); ++f)
    sum += std::log2(1.0 + sinr(f));
  return sum / static_cast<double>(sinr.size());
}

double empirical_quantile(std::vector<double> samples, double prob) {
  if (samples.empty())
    throw InvalidParameterError("samples: need at least one sample");
  if (prob <= 0.0 || prob >= 1.0)
    throw InvalidParameterError("prob: must lie in (0,1)");
  const auto rank = static_cast<std::size_t>(
      std::floor(prob * static_cast<double>(samples.size())));
  if (rank == 0) return 0.0;
  std::nth_element(samples.begin(), samples.begin() + (rank - 1),
                   samples.end());
  return samples[rank - 1];
}

double outage_capacity(const std::vector<double>& samples, double eps_d) {
  if (eps_d <= 0.0 || eps_d >= 1.0)
    throw InvalidParameterError("eps_d: must lie in (0,1)");
  if (static_cast<double>(samples.size()) * eps_d < 100.0)
    throw InsufficientSamplesError(
        "need at least " + std::to_string(100.0 / eps_d) +
        " samples to resolve the " + std::to_string(eps_d) + " tail, got " +
        std::to_string(samples.size()));
  return empirical_quantile(samples, eps_d);
}

}  // namespace fogran
