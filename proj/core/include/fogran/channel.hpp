/*
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef FOGRAN_CHANNEL_HPP
#define FOGRAN_CHANNEL_HPP

#include <Eigen/Dense>
#include <vector>

#include "fogran/model.hpp"
#include "fogran/rng.hpp"
#include "fogran/scheme.hpp"

namespace fogran {

/// One frame of fading and traffic randomness.  eMBB channels are constant
/// over the frame and i.i.d. across frequency channels; URLLC gains refresh
/// every mini-slot.
struct ChannelDraw {
  /// Per frequency channel: cells x cells eMBB coefficient matrix.  In the
  /// uplink rows index receiving ENs; in the downlink rows index receiving
  /// users.  Columns index the interfering cell either way.
  std::vector<Eigen::MatrixXcd> embb;
  /// Per frequency channel: cells x minislots own-cell URLLC gains.
  std::vector<Eigen::MatrixXcd> urllc;
  /// cells x minislots 0/1 URLLC arrival indicators.
  Eigen::MatrixXi activations;
};

/// Draws the frame-constant eMBB matrices for every frequency channel.
std::vector<Eigen::MatrixXcd> sample_embb_channels(const Topology& topo,
                                                   Direction direction,
                                                   RandomStream& rng);

/// Draws per-mini-slot URLLC gains for every frequency channel.
std::vector<Eigen::MatrixXcd> sample_urllc_gains(const Topology& topo,
                                                 int minislots,
                                                 RandomStream& rng);

/// Draws the Bernoulli arrival pattern; consumes one draw per (cell, slot)
/// regardless of the activation probability.
Eigen::MatrixXi sample_activations(int cells, int minislots, double activation,
                                   RandomStream& rng);

/// Draws a complete frame in the fixed order eMBB, URLLC, activations, so
/// sweeps that change only scalar parameters keep draws aligned.
ChannelDraw sample_frame(const Topology& topo, const SystemConfig& config,
                         Direction direction, RandomStream& rng);

}  // namespace fogran

#endif  // FOGRAN_CHANNEL_HPP
