/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "fogran/channel.hpp"

namespace fogran {

std::vector<Eigen::MatrixXcd> sample_embb_channels(const Topology& topo,
                                                   Direction direction,
                                                   RandomStream& rng) {
  const int cells = static_cast<int>(topo.en_positions.size());
  std::vector<Eigen::MatrixXcd> channels;
  channels.reserve(topo.freq_channels);
  for (int f = 0; f < topo.freq_channels; ++f) {
    const Eigen::MatrixXd var = topo.embb_channel_var(direction, f);
    Eigen::MatrixXcd h(cells, cells);
    for (int k = 0; k < cells; ++k)
      for (int j = 0; j < cells; ++j) h(k, j) = rng.complex_normal(var(k, j));
    channels.push_back(std::move(h));
  }
  return channels;
}

std::vector<Eigen::MatrixXcd> sample_urllc_gains(const Topology& topo,
                                                 int minislots,
                                                 RandomStream& rng) {
  const int cells = static_cast<int>(topo.en_positions.size());
  std::vector<Eigen::MatrixXcd> gains;
  gains.reserve(topo.freq_channels);
  for (int f = 0; f < topo.freq_channels; ++f) {
    Eigen::MatrixXcd g(cells, minislots);
    for (int t = 0; t < minislots; ++t)
      for (int k = 0; k < cells; ++k)
        g(k, t) = rng.complex_normal(topo.urllc_link_var(k));
    gains.push_back(std::move(g));
  }
  return gains;
}

Eigen::MatrixXi sample_activations(int cells, int minislots, double activation,
                                   RandomStream& rng) {
  Eigen::MatrixXi a(cells, minislots);
  for (int k = 0; k < cells; ++k)
    for (int t = 0; t < minislots; ++t)
      a(k, t) = rng.bernoulli(activation) ? 1 : 0;
  return a;
}

ChannelDraw sample_frame(const Topology& topo, const SystemConfig& config,
                         Direction direction, RandomStream& rng) {
  ChannelDraw draw;
  draw.embb = sample_embb_channels(topo, direction, rng);
  draw.urllc = sample_urllc_gains(topo, config.minislots, rng);
  draw.activations = sample_activations(config.cells, config.minislots,
                                        config.urllc_activation, rng);
  return draw;
}

}  // namespace fogran
