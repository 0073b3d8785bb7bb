/*
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef FOGRAN_MODEL_HPP
#define FOGRAN_MODEL_HPP

#include <Eigen/Dense>
#include <vector>

#include "fogran/errors.hpp"
#include "fogran/scheme.hpp"

namespace fogran {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Static system parameters.  Powers are linear with the receiver noise
/// variance normalized to one; rates and capacities are in bit/s/Hz.
struct SystemConfig {
  int cells = 4;                                     // number of cells M
  double cell_radius_km = 2.0;                       // r
  double embb_ring_km = 2.0 * 0.86602540378443865;   // r*sin(pi/3)
  double urllc_ring_km = 0.1;                        // URLLC reference ring
  double pathloss_exponent = 3.0;                    // gamma
  int freq_channels = 4;                             // n_F
  int embb_user_channels = 1;                        // channels per eMBB user
  int minislots = 20;                                // mini-slots per frame
  int ru_subcarriers = 12;                           // subcarriers per channel
  int ru_symbols = 14;                               // symbols per mini-slot
  double fronthaul_capacity = 2.0;                   // C, per EN
  double urllc_reliability = 1e-3;                   // eps_U target
  double urllc_activation = 0.5e-3;                  // per-mini-slot arrival
  double embb_power = db_to_linear(6.4);             // UL eMBB power
  double urllc_power = db_to_linear(23.0);           // URLLC power (UL and DL)
  double en_power = db_to_linear(24.77);             // DL EN power budget
  double embb_snr = db_to_linear(3.0);               // eMBB SNR at the ring
  double urllc_snr = db_to_linear(10.0);             // URLLC SNR at the ring

  int users_per_cell() const { return freq_channels / embb_user_channels; }

  /// Throws InvalidParameterError naming the offending field.
  void validate() const;
};

/// Cell geometry plus calibrated fading variances.  eMBB link variances are
/// direction specific because the calibration power differs (eMBB uplink
/// power vs EN downlink power).
struct Topology {
  std::vector<Eigen::Vector2d> en_positions;
  /// Cell-major: user u of cell j sits at index j * users_per_cell + u.
  std::vector<Eigen::Vector2d> embb_positions;
  /// en x user link variances, cell-major columns.
  Eigen::MatrixXd embb_link_var_ul;
  Eigen::MatrixXd embb_link_var_dl;
  /// Own-cell URLLC link variance per cell.
  Eigen::VectorXd urllc_link_var;
  int users_per_cell = 0;
  int freq_channels = 0;
  int user_channels = 0;

  /// Index of the eMBB user scheduled on frequency channel f.
  int user_of_channel(int f) const { return f / user_channels; }

  /// Per-channel variance matrix feeding the eMBB fading draw.  Entry (k, j)
  /// is the variance of the channel coefficient between EN/user pair k and j
  /// in the given direction: uplink rows are receiving ENs, downlink rows are
  /// receiving users.
  Eigen::MatrixXd embb_channel_var(Direction direction, int f) const;
};

/// Path-loss constant making `power * constant` hit the SNR target at the
/// reference distance.
double calibrate_pathloss(double snr_target, double power);

/// c * (d_ref / d)^gamma.
double pathloss_gain(double constant, double ref_distance, double distance,
                     double gamma);

/// Places ENs on a square grid with spacing 2r, eMBB users evenly spaced in
/// angle on the embb_ring circle of their EN, and calibrates all variances.
Topology build_topology(const SystemConfig& config);

}  // namespace fogran

#endif  // FOGRAN_MODEL_HPP
