/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "fogran/engine.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "fogran/embb_dl.hpp"
#include "fogran/embb_ul.hpp"
#include "fogran/errors.hpp"
#include "fogran/fronthaul.hpp"
#include "fogran/urllc.hpp"

namespace fogran {

namespace {

// Activation-sampling budget used when the cell count exceeds the exact
// enumeration limit.
constexpr int kFallbackPatternSamples = 20000;

ErrorBudget budget_for(const SchemeConfig& scheme, const SystemConfig& cfg) {
  if (!scheme.is_oma()) return grant_free_budget(cfg.urllc_reliability);
  if (scheme.direction == Direction::kUplink)
    return collision_budget_ul(scheme.access_latency, cfg.urllc_activation,
                               cfg.urllc_reliability);
  return blockage_budget_dl(scheme.access_latency, cfg.urllc_activation,
                            cfg.urllc_reliability);
}

double erase_probability(const SchemeConfig& scheme, const SystemConfig& cfg,
                         double decode_error) {
  return scheme.multiplexing == Multiplexing::kNomaSic
             ? cfg.urllc_activation * decode_error
             : cfg.urllc_activation;
}

struct TrialStats {
  double embb = 0.0;
  double sigma2_mean = 0.0;
  double sigma2_max = 0.0;
};

// One frame's eMBB evaluation.  Degenerate shares (no eMBB mini-slots, or
// every mini-slot erased) yield rate zero without touching the fronthaul.
TrialStats eval_embb_trial(const Scenario& sc, const ChannelDraw& draw,
                           double decode_error, std::uint64_t trial) {
  const SystemConfig& cfg = sc.system;
  const SchemeConfig& scheme = sc.scheme;
  const bool sampled = cfg.cells > kMaxEnumeratedCells;
  RandomStream pattern_rng(sc.seed ^ 0x5eed0fa11ull, trial);

  TrialStats stats;
  auto record = [&stats](const Eigen::VectorXd& sigma2) {
    stats.sigma2_mean = sigma2.mean();
    stats.sigma2_max = sigma2.maxCoeff();
  };

  if (scheme.direction == Direction::kUplink) {
    switch (scheme.multiplexing) {
      case Multiplexing::kOma: {
        if (scheme.access_latency < 2) return stats;
        const QuantNoise qn =
            quant_noise_ul_oma(draw, cfg, scheme.access_latency);
        record(qn.sigma2);
        stats.embb = rate_ul_oma(draw.embb, qn.sigma2, cfg.embb_power,
                                 scheme.access_latency);
        return stats;
      }
      case Multiplexing::kNomaTin: {
        const QuantNoise qn = quant_noise_ul_tin(draw, cfg);
        record(qn.sigma2);
        stats.embb =
            sampled ? rate_ul_tin_sampled(draw, qn.sigma2, cfg,
                                          kFallbackPatternSamples, pattern_rng)
                          .value
                    : rate_ul_tin(draw, qn.sigma2, cfg);
        return stats;
      }
      case Multiplexing::kNomaPuncturing:
      case Multiplexing::kNomaSic: {
        const double erase = erase_probability(scheme, cfg, decode_error);
        if (erase >= 1.0) return stats;
        const QuantNoise qn = quant_noise_ul_punctured(draw, cfg, erase);
        record(qn.sigma2);
        stats.embb =
            sampled ? rate_ul_punctured_sampled(draw.embb, qn.sigma2,
                                                cfg.embb_power, erase,
                                                kFallbackPatternSamples,
                                                pattern_rng)
                          .value
                    : rate_ul_punctured(draw.embb, qn.sigma2, cfg.embb_power,
                                        erase);
        return stats;
      }
      default:
        throw InvalidParameterError("scheme: not a valid uplink scheme");
    }
  }

  switch (scheme.multiplexing) {
    case Multiplexing::kOma: {
      if (scheme.access_latency < 2) return stats;
      const double share =
          1.0 - 1.0 / static_cast<double>(scheme.access_latency);
      const Precoder pre = design_precoder(draw.embb, cfg.en_power,
                                           cfg.fronthaul_capacity, share);
      record(pre.sigma2);
      stats.embb = rate_dl_oma(draw.embb, pre, scheme.access_latency);
      return stats;
    }
    case Multiplexing::kNomaPuncturing: {
      const Precoder pre = design_precoder(draw.embb, cfg.en_power,
                                           cfg.fronthaul_capacity, 1.0);
      record(pre.sigma2);
      stats.embb =
          sampled ? rate_dl_punctured_sampled(draw.embb, pre, cfg.en_power,
                                              cfg.urllc_activation,
                                              kFallbackPatternSamples,
                                              pattern_rng)
                        .value
                  : rate_dl_punctured(draw.embb, pre, cfg.en_power,
                                      cfg.urllc_activation);
      return stats;
    }
    case Multiplexing::kNomaSuperposition: {
      const Precoder pre = design_precoder(draw.embb, cfg.en_power,
                                           cfg.fronthaul_capacity, 1.0);
      record(pre.sigma2);
      stats.embb =
          sampled
              ? rate_dl_superposition_sampled(draw.embb, pre, cfg.en_power,
                                              cfg.urllc_power,
                                              cfg.urllc_activation,
                                              kFallbackPatternSamples,
                                              pattern_rng)
                    .value
              : rate_dl_superposition(draw.embb, pre, cfg.en_power,
                                      cfg.urllc_power, cfg.urllc_activation);
      return stats;
    }
    default:
      throw InvalidParameterError("scheme: not a valid downlink scheme");
  }
}

bool urllc_needs_embb_draw(const SchemeConfig& scheme) {
  return scheme.direction == Direction::kUplink && !scheme.is_oma();
}

// The mini-slot spectral efficiencies one draw index contributes, written
// into per-cell slices of the pooled sample buffers.
void urllc_samples_for_draw(const Scenario& sc, const Topology& topo,
                            const ChannelDraw& draw,
                            std::vector<std::vector<double>>& pools,
                            std::size_t offset) {
  const int slots = sc.system.minislots;
  for (int k = 0; k < sc.system.cells; ++k)
    for (int t = 0; t < slots; ++t)
      pools[k][offset + t] = spectral_efficiency(
          urllc_sinr(sc.scheme, draw, k, t, sc.system));
  (void)topo;
}

ChannelDraw topup_draw(const Scenario& sc, const Topology& topo,
                       std::uint64_t index) {
  RandomStream rng(sc.seed, index);
  ChannelDraw draw;
  if (urllc_needs_embb_draw(sc.scheme))
    draw.embb = sample_embb_channels(topo, sc.scheme.direction, rng);
  draw.urllc = sample_urllc_gains(topo, sc.system.minislots, rng);
  return draw;
}

}  // namespace

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FOGRAN_WORKERS")) {
    const int value = std::atoi(env);
    if (value > 0) return value;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

ChannelDraw frame_for_trial(const Scenario& scenario, const Topology& topo,
                            std::uint64_t trial) {
  RandomStream rng(scenario.seed, trial);
  return sample_frame(topo, scenario.system, scenario.scheme.direction, rng);
}

ExperimentResult run_experiment_full(const Scenario& scenario, int workers) {
  scenario.system.validate();
  if (!scheme_valid(scenario.scheme))
    throw InvalidParameterError("scheme: invalid direction/multiplexing mix");
  if (scenario.trials < 1)
    throw InvalidParameterError("trials: need at least one trial");
  if (scenario.urllc_tail_factor < 100.0)
    throw InvalidParameterError("urllc_tail_factor: must be at least 100");

  const SystemConfig& cfg = scenario.system;
  const Topology topo = build_topology(cfg);
  const auto trials = static_cast<std::size_t>(scenario.trials);
  const auto slots = static_cast<std::size_t>(cfg.minislots);

  ExperimentResult result;
  RateReport& report = result.report;
  report.scheme = scenario.scheme;
  report.trials = scenario.trials;
  report.seed = scenario.seed;

  ErrorBudget budget;
  bool do_urllc = true;
  try {
    budget = budget_for(scenario.scheme, cfg);
    report.decode_error = budget.decode_error;
  } catch (const InfeasibleBudgetError&) {
    report.flags.budget_infeasible = true;
    do_urllc = false;
  }

  // Puncturing-style schemes can lose the whole fronthaul to signaling
  // overhead; that is a property of the configuration, not of any draw.
  bool do_embb = true;
  if (scenario.scheme.direction == Direction::kUplink &&
      (scenario.scheme.multiplexing == Multiplexing::kNomaPuncturing ||
       scenario.scheme.multiplexing == Multiplexing::kNomaSic)) {
    const double erase =
        erase_probability(scenario.scheme, cfg, budget.decode_error);
    if (erase < 1.0) {
      const double overhead =
          binary_entropy(erase) /
          (static_cast<double>(cfg.freq_channels) * cfg.ru_symbols *
           cfg.ru_subcarriers);
      if (cfg.fronthaul_capacity - overhead <= 0.0) {
        report.flags.fronthaul_infeasible = true;
        do_embb = false;
      }
    }
  }

  // Size the URLLC pool before launching: enough tail mass for the quantile,
  // topped up with channel-only draws past the eMBB trials.
  std::size_t extra = 0;
  std::size_t pool_size = 0;
  if (do_urllc) {
    const double wanted =
        std::max(scenario.urllc_tail_factor, 100.0) / budget.decode_error;
    const auto required = static_cast<std::size_t>(std::ceil(wanted)) + 1;
    const std::size_t target =
        std::max(scenario.min_urllc_samples, required);
    if (target > scenario.max_urllc_samples) {
      report.flags.urllc_insufficient = true;
      do_urllc = false;
    } else {
      const std::size_t from_trials = trials * slots;
      if (target > from_trials)
        extra = (target - from_trials + slots - 1) / slots;
      pool_size = (trials + extra) * slots;
    }
  }

  result.trial_embb_rates.assign(trials, 0.0);
  std::vector<TrialStats> stats(trials);
  std::vector<std::vector<double>> pools;
  if (do_urllc)
    pools.assign(cfg.cells, std::vector<double>(pool_size, 0.0));

  const std::size_t total_tasks = trials + extra;
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  auto run_task = [&](std::size_t index) {
    if (index < trials) {
      const ChannelDraw draw = frame_for_trial(scenario, topo, index);
      if (do_embb)
        stats[index] = eval_embb_trial(scenario, draw, budget.decode_error,
                                       index);
      if (do_urllc)
        urllc_samples_for_draw(scenario, topo, draw, pools, index * slots);
    } else if (do_urllc) {
      const ChannelDraw draw = topup_draw(scenario, topo, index);
      urllc_samples_for_draw(scenario, topo, draw, pools, index * slots);
    }
  };

  auto worker_loop = [&]() {
    for (;;) {
      const std::size_t index = next.fetch_add(1);
      if (index >= total_tasks) return;
      try {
        run_task(index);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int worker_count = resolve_workers(workers);
  if (worker_count <= 1) {
    worker_loop();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(worker_count);
    for (int w = 0; w < worker_count; ++w) threads.emplace_back(worker_loop);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Aggregate strictly in trial order so the result is independent of how
  // tasks were interleaved across workers.
  double mean = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    result.trial_embb_rates[i] = stats[i].embb;
    mean += stats[i].embb;
  }
  mean /= static_cast<double>(trials);
  double variance = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const double d = stats[i].embb - mean;
    variance += d * d;
  }
  report.embb_rate = mean;
  report.embb_std_error =
      trials > 1 ? std::sqrt(variance / (static_cast<double>(trials) - 1.0) /
                             static_cast<double>(trials))
                 : 0.0;

  double sigma_mean = 0.0;
  double sigma_max = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    sigma_mean += stats[i].sigma2_mean;
    sigma_max = std::max(sigma_max, stats[i].sigma2_max);
  }
  report.sigma2_mean = sigma_mean / static_cast<double>(trials);
  report.sigma2_max = sigma_max;

  if (do_urllc) {
    report.urllc_samples_per_cell = pool_size;
    double sum = 0.0;
    try {
      for (int k = 0; k < cfg.cells; ++k)
        sum += outage_capacity(pools[k], budget.decode_error);
      report.urllc_rate = sum / static_cast<double>(cfg.cells);
    } catch (const InsufficientSamplesError&) {
      report.flags.urllc_insufficient = true;
      report.urllc_rate = 0.0;
    }
    result.urllc_pools = std::move(pools);
  }

  return result;
}

RateReport run_experiment(const Scenario& scenario, int workers) {
  return run_experiment_full(scenario, workers).report;
}

std::string sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kActivation:
      return "a_U";
    case SweepAxis::kFronthaul:
      return "C";
    case SweepAxis::kPathloss:
      return "gamma";
    case SweepAxis::kAccessLatency:
      return "L_U";
    case SweepAxis::kUrllcPower:
      return "P_U";
  }
  return "unknown";
}

std::vector<RateReport> sweep(const Scenario& base, SweepAxis axis,
                              const std::vector<double>& values,
                              int workers) {
  if (values.empty())
    throw InvalidParameterError("values: need at least one sweep value");
  std::vector<RateReport> reports;
  reports.reserve(values.size());
  for (const double value : values) {
    Scenario scenario = base;
    switch (axis) {
      case SweepAxis::kActivation:
        scenario.system.urllc_activation = value;
        break;
      case SweepAxis::kFronthaul:
        scenario.system.fronthaul_capacity = value;
        break;
      case SweepAxis::kPathloss:
        scenario.system.pathloss_exponent = value;
        break;
      case SweepAxis::kAccessLatency:
        // Grant-free schemes have no access window; their curve is flat.
        if (scenario.scheme.is_oma())
          scenario.scheme.access_latency =
              static_cast<int>(std::lround(value));
        break;
      case SweepAxis::kUrllcPower:
        scenario.system.urllc_power = value;
        break;
    }
    RateReport report = run_experiment(scenario, workers);
    report.axis = sweep_axis_name(axis);
    report.axis_value = value;
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace fogran
