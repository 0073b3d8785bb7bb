/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Microbenchmarks for the numerical kernels dominating experiment runtime:
 * the quantization-noise bisection, the activation-averaged uplink rates,
 * the downlink precoder design and a full single-trial evaluation.
 */
#include <benchmark/benchmark.h>

#include "fogran/channel.hpp"
#include "fogran/embb_dl.hpp"
#include "fogran/embb_ul.hpp"
#include "fogran/engine.hpp"
#include "fogran/fronthaul.hpp"
#include "fogran/model.hpp"
#include "fogran/rng.hpp"

namespace {

fogran::SystemConfig bench_config(int cells) {
  fogran::SystemConfig config;
  config.cells = cells;
  config.urllc_activation = 0.05;
  return config;
}

fogran::ChannelDraw bench_frame(const fogran::SystemConfig& config,
                                fogran::Direction direction,
                                std::uint64_t seed) {
  const fogran::Topology topo = fogran::build_topology(config);
  fogran::RandomStream rng(seed, 0);
  return fogran::sample_frame(topo, config, direction, rng);
}

void BM_QuantNoiseSolve(benchmark::State& state) {
  const auto config = bench_config(static_cast<int>(state.range(0)));
  const auto draw = bench_frame(config, fogran::Direction::kUplink, 7);
  for (auto _ : state) {
    auto noise = fogran::quant_noise_ul_tin(draw, config);
    benchmark::DoNotOptimize(noise.sigma2);
  }
}
BENCHMARK(BM_QuantNoiseSolve)->Arg(4)->Arg(8);

void BM_RateUlTin(benchmark::State& state) {
  const auto config = bench_config(static_cast<int>(state.range(0)));
  const auto draw = bench_frame(config, fogran::Direction::kUplink, 7);
  const auto noise = fogran::quant_noise_ul_tin(draw, config);
  for (auto _ : state) {
    const double rate = fogran::rate_ul_tin(draw, noise.sigma2, config);
    benchmark::DoNotOptimize(rate);
  }
}
BENCHMARK(BM_RateUlTin)->Arg(4)->Arg(8);

void BM_RateUlPunctured(benchmark::State& state) {
  const auto config = bench_config(static_cast<int>(state.range(0)));
  const auto draw = bench_frame(config, fogran::Direction::kUplink, 7);
  const auto noise =
      fogran::quant_noise_ul_punctured(draw, config, config.urllc_activation);
  for (auto _ : state) {
    const double rate = fogran::rate_ul_punctured(
        draw.embb, noise.sigma2, config.embb_power, config.urllc_activation);
    benchmark::DoNotOptimize(rate);
  }
}
BENCHMARK(BM_RateUlPunctured)->Arg(4)->Arg(8);

void BM_DesignPrecoder(benchmark::State& state) {
  const auto config = bench_config(static_cast<int>(state.range(0)));
  const auto draw = bench_frame(config, fogran::Direction::kDownlink, 7);
  for (auto _ : state) {
    auto precoder = fogran::design_precoder(
        draw.embb, config.en_power, config.fronthaul_capacity, 1.0);
    benchmark::DoNotOptimize(precoder.sigma2);
  }
}
BENCHMARK(BM_DesignPrecoder)->Arg(4)->Arg(8);

void BM_SingleTrial(benchmark::State& state) {
  fogran::Scenario scenario;
  scenario.system = bench_config(4);
  scenario.scheme = {fogran::Direction::kUplink,
                     fogran::Multiplexing::kNomaTin, 2};
  scenario.trials = 1;
  scenario.min_urllc_samples = 0;
  scenario.urllc_tail_factor = 100.0;
  scenario.system.urllc_activation = 0.5e-3;
  for (auto _ : state) {
    auto result = fogran::run_experiment(scenario, 1);
    benchmark::DoNotOptimize(result.embb_rate);
  }
}
BENCHMARK(BM_SingleTrial);

}  // namespace

BENCHMARK_MAIN();
