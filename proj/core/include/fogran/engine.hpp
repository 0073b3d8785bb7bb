/*
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef FOGRAN_ENGINE_HPP
#define FOGRAN_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fogran/channel.hpp"
#include "fogran/model.hpp"
#include "fogran/scheme.hpp"

namespace fogran {

/// One Monte-Carlo experiment: a system, a sharing scheme and a sampling
/// budget.  The URLLC tail is pooled across trials and mini-slots; when the
/// eMBB trials alone cannot resolve it, extra channel-only draws (indices
/// past `trials`) top the pool up to urllc_tail_factor / decode_error
/// samples per cell, floored at min_urllc_samples and capped at
/// max_urllc_samples.
struct Scenario {
  SystemConfig system;
  SchemeConfig scheme;
  int trials = 500;
  std::uint64_t seed = 1;
  double urllc_tail_factor = 400.0;
  std::size_t min_urllc_samples = 100000;
  std::size_t max_urllc_samples = 2000000;
};

struct ReportFlags {
  /// Access-phase error mass alone exceeded the reliability target.
  bool budget_infeasible = false;
  /// Signaling overhead exhausted the fronthaul capacity.
  bool fronthaul_infeasible = false;
  /// The sample cap was too small to resolve the outage tail.
  bool urllc_insufficient = false;

  bool any() const {
    return budget_infeasible || fronthaul_infeasible || urllc_insufficient;
  }
};

struct RateReport {
  SchemeConfig scheme;
  std::string axis;                    // sweep axis name, empty for single runs
  std::optional<double> axis_value;    // swept value, if any
  double embb_rate = 0.0;              // per-cell eMBB sum-rate, bit/s/Hz
  double embb_std_error = 0.0;
  double urllc_rate = 0.0;             // per-cell URLLC outage capacity
  double decode_error = 0.0;           // eps_D after the access split
  ReportFlags flags;
  double sigma2_mean = 0.0;            // quantization noise diagnostics
  double sigma2_max = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::size_t urllc_samples_per_cell = 0;
};

/// Per-trial eMBB rates and the pooled URLLC samples next to the aggregate,
/// for convergence diagnostics and quantile uncertainty estimates.
struct ExperimentResult {
  RateReport report;
  std::vector<double> trial_embb_rates;
  /// Per cell: the pooled mini-slot spectral efficiencies the outage
  /// capacity was read from.  Empty when the URLLC side was skipped.
  std::vector<std::vector<double>> urllc_pools;
};

/// Resolved worker count: explicit argument, else the FOGRAN_WORKERS
/// environment variable, else the hardware concurrency.
int resolve_workers(int requested);

/// Runs one experiment.  Trials are deterministic functions of (seed, trial
/// index), and aggregation is performed in trial order, so results do not
/// depend on the worker count.  Budget infeasibility zeroes the URLLC rate
/// and fronthaul infeasibility zeroes the eMBB rate; both set flags instead
/// of aborting.
ExperimentResult run_experiment_full(const Scenario& scenario,
                                     int workers = 0);
RateReport run_experiment(const Scenario& scenario, int workers = 0);

enum class SweepAxis {
  kActivation,     // per-mini-slot URLLC arrival probability
  kFronthaul,      // fronthaul capacity per EN
  kPathloss,       // path-loss exponent
  kAccessLatency,  // orthogonal access window, mini-slots
  kUrllcPower,     // URLLC transmit power, linear
};

std::string sweep_axis_name(SweepAxis axis);

/// Runs the scenario once per axis value with identical seeds, so channel
/// draws are shared across values wherever the axis does not change their
/// law.  Returns one report per value, in order.
std::vector<RateReport> sweep(const Scenario& base, SweepAxis axis,
                              const std::vector<double>& values,
                              int workers = 0);

/// The exact frame a given trial index sees; exposed so tests can verify
/// draw alignment across sweep values.
ChannelDraw frame_for_trial(const Scenario& scenario, const Topology& topo,
                            std::uint64_t trial);

}  // namespace fogran

#endif  // FOGRAN_ENGINE_HPP
