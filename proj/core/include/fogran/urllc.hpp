/*
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef FOGRAN_URLLC_HPP
#define FOGRAN_URLLC_HPP

#include <Eigen/Dense>
#include <vector>

#include "fogran/channel.hpp"
#include "fogran/model.hpp"
#include "fogran/scheme.hpp"

namespace fogran {

/// Split of the end-to-end URLLC reliability target between the random access
/// phase and channel decoding.  Always satisfies the recombination identity
/// access_loss + decode_error * decode_weight == reliability.
struct ErrorBudget {
  double reliability = 0.0;   // end-to-end target
  double access_loss = 0.0;   // probability mass lost before decoding
  double decode_error = 0.0;  // per-decode error budget
  double decode_weight = 1.0; // probability a decode attempt happens
};

/// Uplink orthogonal access: a packet is lost outright when another packet
/// arrives in the same access window, so the decode budget is what remains
/// after the collision mass.  Window size is access_latency mini-slots.
/// Throws InfeasibleBudgetError when collisions alone exceed the target.
ErrorBudget collision_budget_ul(int access_latency, double activation,
                                double reliability);

/// Downlink orthogonal access: simultaneous arrivals are queued and one is
/// served uniformly at random within the window, so only the unserved
/// fraction is lost and every served packet consumes decode budget.
/// Throws InfeasibleBudgetError when blocking alone exceeds the target.
ErrorBudget blockage_budget_dl(int access_latency, double activation,
                               double reliability);

/// Grant-free access never loses packets before decoding.
inline ErrorBudget grant_free_budget(double reliability) {
  return {reliability, 0.0, reliability, 1.0};
}

/// Per-frequency URLLC decoding SINR for cell `cell` in mini-slot `slot`.
/// Uplink H-NOMA treats the co-channel eMBB uplink as noise at the EN;
/// downlink superposition splits the EN power and self-interferes.
Eigen::VectorXd urllc_sinr(const SchemeConfig& scheme, const ChannelDraw& draw,
                           int cell, int slot, const SystemConfig& config);

/// Mean over frequency channels of log2(1 + sinr).
double spectral_efficiency(const Eigen::VectorXd& sinr);

/// Largest rate whose empirical outage stays within `prob`: the
/// floor(prob * N)-th smallest sample, 1-indexed, or 0 when that index is 0.
double empirical_quantile(std::vector<double> samples, double prob);

/// Outage capacity at decode-error level eps_d.  Requires enough samples to
/// resolve the tail: throws InsufficientSamplesError when
/// samples.size() < 100 / eps_d.
double outage_capacity(const std::vector<double>& samples, double eps_d);

}  // namespace fogran

#endif  // FOGRAN_URLLC_HPP
