/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include <cmath>
#include <cstdlib>
#include <vector>

#include <doctest.h>

#include "fogran/config_io.hpp"
#include "fogran/engine.hpp"
#include "fogran/errors.hpp"
#include "fogran/urllc.hpp"
#include "test_support.hpp"

using fogran::Direction;
using fogran::ExperimentResult;
using fogran::InvalidParameterError;
using fogran::Multiplexing;
using fogran::RateReport;
using fogran::Scenario;
using fogran::SchemeConfig;
using fogran::SweepAxis;

namespace {

Scenario small_scenario(Direction direction, Multiplexing multiplexing,
                        int trials = 6) {
  Scenario sc;
  sc.system = testsupport::small_config();
  sc.scheme = SchemeConfig{direction, multiplexing, 2};
  sc.trials = trials;
  sc.seed = 77;
  sc.urllc_tail_factor = 100.0;
  return sc;
}

}  // namespace

TEST_CASE("experiments are deterministic and worker-count independent") {
  const Scenario sc = small_scenario(Direction::kUplink,
                                     Multiplexing::kNomaTin);
  const ExperimentResult serial = fogran::run_experiment_full(sc, 1);
  const ExperimentResult again = fogran::run_experiment_full(sc, 1);
  const ExperimentResult threaded = fogran::run_experiment_full(sc, 3);

  CHECK(serial.report == again.report);
  CHECK(serial.report == threaded.report);
  REQUIRE(serial.trial_embb_rates.size() == threaded.trial_embb_rates.size());
  for (std::size_t i = 0; i < serial.trial_embb_rates.size(); ++i)
    CHECK(serial.trial_embb_rates[i] == threaded.trial_embb_rates[i]);
  REQUIRE(serial.urllc_pools.size() == threaded.urllc_pools.size());
  for (std::size_t k = 0; k < serial.urllc_pools.size(); ++k)
    CHECK(serial.urllc_pools[k] == threaded.urllc_pools[k]);
}

TEST_CASE("trial results extend stably when more trials are requested") {
  Scenario sc = small_scenario(Direction::kUplink,
                               Multiplexing::kNomaPuncturing, 5);
  const ExperimentResult shorter = fogran::run_experiment_full(sc, 1);
  sc.trials = 9;
  const ExperimentResult longer = fogran::run_experiment_full(sc, 1);
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(shorter.trial_embb_rates[i] == longer.trial_embb_rates[i]);
}

TEST_CASE("the reported standard error restates the trial spread") {
  const Scenario sc = small_scenario(Direction::kUplink, Multiplexing::kOma,
                                     8);
  const ExperimentResult res = fogran::run_experiment_full(sc, 1);
  const auto& rates = res.trial_embb_rates;
  double mean = 0.0;
  for (double r : rates) mean += r;
  mean /= static_cast<double>(rates.size());
  double variance = 0.0;
  for (double r : rates) variance += (r - mean) * (r - mean);
  const double n = static_cast<double>(rates.size());
  CHECK(res.report.embb_rate == doctest::Approx(mean).epsilon(1e-14));
  CHECK(res.report.embb_std_error ==
        doctest::Approx(std::sqrt(variance / (n - 1.0) / n)).epsilon(1e-12));
  CHECK(res.report.embb_std_error > 0.0);
}

TEST_CASE("the pooled tail samples back the reported outage") {
  const Scenario sc = small_scenario(Direction::kUplink,
                                     Multiplexing::kNomaTin, 5);
  const ExperimentResult res = fogran::run_experiment_full(sc, 1);
  const RateReport& rep = res.report;

  REQUIRE(res.urllc_pools.size() ==
          static_cast<std::size_t>(sc.system.cells));
  const std::size_t slots = static_cast<std::size_t>(sc.system.minislots);
  CHECK(rep.urllc_samples_per_cell >= 100001);
  CHECK(rep.urllc_samples_per_cell % slots == 0);
  double sum = 0.0;
  for (const auto& pool : res.urllc_pools) {
    CHECK(pool.size() == rep.urllc_samples_per_cell);
    sum += fogran::outage_capacity(pool, rep.decode_error);
  }
  CHECK(rep.urllc_rate == sum / static_cast<double>(sc.system.cells));

  // The leading slice of each pool comes from the eMBB trial frames.
  const fogran::Topology topo = fogran::build_topology(sc.system);
  for (std::uint64_t trial : {std::uint64_t{0}, std::uint64_t{3}}) {
    const fogran::ChannelDraw draw = fogran::frame_for_trial(sc, topo, trial);
    for (int t = 0; t < sc.system.minislots; ++t) {
      const double expected = fogran::spectral_efficiency(
          fogran::urllc_sinr(sc.scheme, draw, 1, t, sc.system));
      CHECK(res.urllc_pools[1][trial * slots + t] == expected);
    }
  }
}

TEST_CASE("impossible access budgets flag out only the reliability side") {
  Scenario sc = small_scenario(Direction::kUplink, Multiplexing::kOma);
  sc.system.urllc_activation = 2e-3;  // collision mass alone exceeds 1e-3
  const ExperimentResult res = fogran::run_experiment_full(sc, 1);
  CHECK(res.report.flags.budget_infeasible);
  CHECK(!res.report.flags.fronthaul_infeasible);
  CHECK(res.report.urllc_rate == 0.0);
  CHECK(res.report.decode_error == 0.0);
  CHECK(res.report.urllc_samples_per_cell == 0);
  CHECK(res.urllc_pools.empty());
  CHECK(res.report.embb_rate > 0.0);
}

TEST_CASE("sample caps surface as insufficiency instead of a bad quantile") {
  Scenario sc = small_scenario(Direction::kUplink, Multiplexing::kNomaTin);
  sc.min_urllc_samples = 500;
  sc.max_urllc_samples = 1000;  // the 1e-3 tail needs at least 1e5
  const ExperimentResult res = fogran::run_experiment_full(sc, 1);
  CHECK(res.report.flags.urllc_insufficient);
  CHECK(res.report.urllc_rate == 0.0);
  CHECK(res.report.decode_error == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(res.urllc_pools.empty());
  CHECK(res.report.embb_rate > 0.0);
}

TEST_CASE("single-slot access windows carry no broadband traffic") {
  for (Direction dir : {Direction::kUplink, Direction::kDownlink}) {
    Scenario sc = small_scenario(dir, Multiplexing::kOma, 4);
    sc.scheme.access_latency = 1;
    const ExperimentResult res = fogran::run_experiment_full(sc, 1);
    CHECK(res.report.embb_rate == 0.0);
    CHECK(!res.report.flags.any());
    CHECK(res.report.urllc_rate > 0.0);
    // Nothing arrives before the decoder, so it owns the whole target.
    CHECK(res.report.decode_error ==
          doctest::Approx(sc.system.urllc_reliability).epsilon(1e-15));
  }
}

TEST_CASE("saturated puncturing erases every mini-slot") {
  Scenario sc = small_scenario(Direction::kUplink,
                               Multiplexing::kNomaPuncturing, 4);
  sc.system.urllc_activation = 1.0;
  const ExperimentResult res = fogran::run_experiment_full(sc, 1);
  CHECK(res.report.embb_rate == 0.0);
  CHECK(!res.report.flags.fronthaul_infeasible);
  CHECK(res.report.urllc_rate > 0.0);
}

TEST_CASE("signaling overhead can exhaust the fronthaul") {
  Scenario sc = small_scenario(Direction::kUplink,
                               Multiplexing::kNomaPuncturing, 4);
  sc.system.urllc_activation = 0.3;
  sc.system.fronthaul_capacity = 0.002;  // below the overhead of H2(0.3)/336
  const ExperimentResult res = fogran::run_experiment_full(sc, 1);
  CHECK(res.report.flags.fronthaul_infeasible);
  CHECK(!res.report.flags.budget_infeasible);
  CHECK(res.report.embb_rate == 0.0);
  CHECK(res.report.urllc_rate > 0.0);
}

TEST_CASE("downlink schemes run end to end with healthy diagnostics") {
  for (Multiplexing mux :
       {Multiplexing::kNomaPuncturing, Multiplexing::kNomaSuperposition}) {
    const Scenario sc = small_scenario(Direction::kDownlink, mux, 4);
    const ExperimentResult res = fogran::run_experiment_full(sc, 1);
    CHECK(!res.report.flags.any());
    CHECK(res.report.embb_rate > 0.0);
    CHECK(res.report.urllc_rate > 0.0);
    CHECK(res.report.sigma2_mean > 0.0);
    CHECK(res.report.sigma2_max >= res.report.sigma2_mean);
  }
}

TEST_CASE("scenario validation rejects unusable setups") {
  Scenario sc = small_scenario(Direction::kUplink, Multiplexing::kNomaTin);
  sc.trials = 0;
  CHECK_THROWS_AS(fogran::run_experiment(sc, 1), InvalidParameterError);
  sc.trials = 4;
  sc.urllc_tail_factor = 50.0;
  CHECK_THROWS_AS(fogran::run_experiment(sc, 1), InvalidParameterError);
  sc.urllc_tail_factor = 400.0;
  sc.scheme = SchemeConfig{Direction::kDownlink, Multiplexing::kNomaTin, 2};
  CHECK_THROWS_AS(fogran::run_experiment(sc, 1), InvalidParameterError);
  sc.scheme = SchemeConfig{Direction::kDownlink, Multiplexing::kNomaSic, 2};
  CHECK_THROWS_AS(fogran::run_experiment(sc, 1), InvalidParameterError);
  sc.scheme = SchemeConfig{Direction::kUplink,
                           Multiplexing::kNomaSuperposition, 2};
  CHECK_THROWS_AS(fogran::run_experiment(sc, 1), InvalidParameterError);
  CHECK_THROWS_AS(
      fogran::sweep(small_scenario(Direction::kUplink, Multiplexing::kNomaTin),
                    SweepAxis::kActivation, {}, 1),
      InvalidParameterError);
}

TEST_CASE("grant-free reliability rides through activation changes") {
  const Scenario base = small_scenario(Direction::kUplink,
                                       Multiplexing::kNomaTin);
  const auto reports =
      fogran::sweep(base, SweepAxis::kActivation, {0.05, 0.2}, 1);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].axis == "a_U");
  REQUIRE(reports[0].axis_value.has_value());
  REQUIRE(reports[1].axis_value.has_value());
  CHECK(*reports[0].axis_value == 0.05);
  CHECK(*reports[1].axis_value == 0.2);
  CHECK(reports[0].seed == base.seed);

  // Same channel draws, same decoder budget: the URLLC side is untouched
  // while the broadband side pays for the extra interference.
  CHECK(reports[0].urllc_rate == reports[1].urllc_rate);
  CHECK(reports[0].decode_error == reports[1].decode_error);
  CHECK(reports[0].embb_rate > reports[1].embb_rate);
}

TEST_CASE("fronthaul capacity sweeps reuse the channel draws") {
  const Scenario base = small_scenario(Direction::kUplink,
                                       Multiplexing::kNomaTin);
  const auto reports = fogran::sweep(base, SweepAxis::kFronthaul, {1.0, 4.0},
                                     1);
  CHECK(reports[0].axis == "C");
  CHECK(reports[0].urllc_rate == reports[1].urllc_rate);
  CHECK(reports[0].embb_rate < reports[1].embb_rate);
  CHECK(reports[0].sigma2_max > reports[1].sigma2_max);
}

TEST_CASE("access latency sweeps leave grant-free schemes untouched") {
  const Scenario base = small_scenario(Direction::kUplink,
                                       Multiplexing::kNomaTin);
  const auto noma = fogran::sweep(base, SweepAxis::kAccessLatency, {2.0, 8.0},
                                  1);
  CHECK(noma[0].axis == "L_U");
  CHECK(noma[0].embb_rate == noma[1].embb_rate);
  CHECK(noma[0].urllc_rate == noma[1].urllc_rate);
  CHECK(noma[0].decode_error == noma[1].decode_error);

  // The orthogonal scheme does react: the longer window loses so much access
  // mass at this activation that the reliability target is unreachable.
  const Scenario oma = small_scenario(Direction::kUplink, Multiplexing::kOma);
  const auto reports = fogran::sweep(oma, SweepAxis::kAccessLatency,
                                     {2.0, 8.0}, 1);
  CHECK(!reports[0].flags.budget_infeasible);
  CHECK(reports[0].urllc_rate > 0.0);
  CHECK(reports[1].flags.budget_infeasible);
  CHECK(reports[1].urllc_rate == 0.0);
  CHECK(reports[0].embb_rate > 0.0);
  CHECK(reports[1].embb_rate > 0.0);
}

TEST_CASE("worker resolution prefers explicit counts over the environment") {
  setenv("FOGRAN_WORKERS", "3", 1);
  CHECK(fogran::resolve_workers(0) == 3);
  CHECK(fogran::resolve_workers(5) == 5);
  setenv("FOGRAN_WORKERS", "not-a-number", 1);
  CHECK(fogran::resolve_workers(0) >= 1);
  unsetenv("FOGRAN_WORKERS");
  CHECK(fogran::resolve_workers(0) >= 1);
}
