/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "fogran/model.hpp"

#include <cmath>
#include <string>

namespace fogran {

namespace {

void require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw InvalidParameterError(field + ": " + why);
}

}  // namespace

void SystemConfig::validate() const {
  require(cells >= 1, "cells", "need at least one cell");
  require(cell_radius_km > 0.0, "cell_radius_km", "must be positive");
  require(embb_ring_km > 0.0, "embb_ring_km", "must be positive");
  require(urllc_ring_km > 0.0, "urllc_ring_km", "must be positive");
  require(pathloss_exponent > 0.0, "pathloss_exponent", "must be positive");
  require(freq_channels >= 1, "freq_channels", "need at least one channel");
  require(embb_user_channels >= 1, "embb_user_channels", "must be positive");
  require(freq_channels % embb_user_channels == 0, "embb_user_channels",
          "must divide freq_channels");
  require(minislots >= 1, "minislots", "need at least one mini-slot");
  require(ru_subcarriers >= 1, "ru_subcarriers", "must be positive");
  require(ru_symbols >= 1, "ru_symbols", "must be positive");
  require(fronthaul_capacity > 0.0, "fronthaul_capacity", "must be positive");
  require(urllc_reliability > 0.0 && urllc_reliability < 1.0,
          "urllc_reliability", "must lie in (0,1)");
  require(urllc_activation >= 0.0 && urllc_activation <= 1.0,
          "urllc_activation", "must lie in [0,1]");
  require(embb_power > 0.0, "embb_power", "must be positive");
  require(urllc_power > 0.0, "urllc_power", "must be positive");
  require(en_power > 0.0, "en_power", "must be positive");
  require(urllc_power <= en_power, "urllc_power",
          "cannot exceed the EN power budget");
  require(embb_snr > 0.0, "embb_snr", "must be positive");
  require(urllc_snr > 0.0, "urllc_snr", "must be positive");
}

double calibrate_pathloss(double snr_target, double power) {
  if (snr_target <= 0.0)
    throw InvalidParameterError("snr_target: must be positive");
  if (power <= 0.0) throw InvalidParameterError("power: must be positive");
  return snr_target / power;
}

double pathloss_gain(double constant, double ref_distance, double distance,
                     double gamma) {
  if (distance <= 0.0) throw InvalidParameterError("distance: must be positive");
  if (ref_distance <= 0.0)
    throw InvalidParameterError("ref_distance: must be positive");
  return constant * std::pow(ref_distance / distance, gamma);
}

Eigen::MatrixXd Topology::embb_channel_var(Direction direction, int f) const {
  const int cells = static_cast<int>(en_positions.size());
  const int u = user_of_channel(f);
  Eigen::MatrixXd var(cells, cells);
  if (direction == Direction::kUplink) {
    // Row k: EN k receiving; column j: the scheduled user of cell j.
    for (int k = 0; k < cells; ++k)
      for (int j = 0; j < cells; ++j)
        var(k, j) = embb_link_var_ul(k, j * users_per_cell + u);
  } else {
    // Row k: the scheduled user of cell k receiving; column j: EN j sending.
    for (int k = 0; k < cells; ++k)
      for (int j = 0; j < cells; ++j)
        var(k, j) = embb_link_var_dl(j, k * users_per_cell + u);
  }
  return var;
}

Topology build_topology(const SystemConfig& config) {
  config.validate();

  const int cells = config.cells;
  const int users = config.users_per_cell();
  const double spacing = 2.0 * config.cell_radius_km;
  const int grid_cols =
      static_cast<int>(std::ceil(std::sqrt(static_cast<double>(cells))));

  Topology topo;
  topo.users_per_cell = users;
  topo.freq_channels = config.freq_channels;
  topo.user_channels = config.embb_user_channels;

  topo.en_positions.reserve(cells);
  for (int i = 0; i < cells; ++i) {
    topo.en_positions.emplace_back(spacing * (i % grid_cols),
                                   spacing * (i / grid_cols));
  }

  const double two_pi = 2.0 * 3.14159265358979323846;
  topo.embb_positions.reserve(static_cast<std::size_t>(cells) * users);
  for (int j = 0; j < cells; ++j) {
    for (int u = 0; u < users; ++u) {
      const double angle = two_pi * u / users;
      topo.embb_positions.emplace_back(
          topo.en_positions[j].x() + config.embb_ring_km * std::cos(angle),
          topo.en_positions[j].y() + config.embb_ring_km * std::sin(angle));
    }
  }

  const double c_embb_ul =
      calibrate_pathloss(config.embb_snr, config.embb_power);
  const double c_embb_dl = calibrate_pathloss(config.embb_snr, config.en_power);
  const double c_urllc =
      calibrate_pathloss(config.urllc_snr, config.urllc_power);

  topo.embb_link_var_ul.resize(cells, cells * users);
  topo.embb_link_var_dl.resize(cells, cells * users);
  for (int i = 0; i < cells; ++i) {
    for (int n = 0; n < cells * users; ++n) {
      const double d = (topo.en_positions[i] - topo.embb_positions[n]).norm();
      topo.embb_link_var_ul(i, n) = pathloss_gain(
          c_embb_ul, config.embb_ring_km, d, config.pathloss_exponent);
      topo.embb_link_var_dl(i, n) = pathloss_gain(
          c_embb_dl, config.embb_ring_km, d, config.pathloss_exponent);
    }
  }

  // URLLC users couple only to their own EN, at the reference ring exactly.
  topo.urllc_link_var = Eigen::VectorXd::Constant(cells, c_urllc);
  return topo;
}

}  // namespace fogran
