/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include <cmath>
#include <string>

#include <doctest.h>

#include "fogran/errors.hpp"
#include "fogran/model.hpp"
#include "test_support.hpp"

using fogran::Direction;
using fogran::InvalidParameterError;
using fogran::SystemConfig;
using fogran::Topology;

namespace {

std::string validation_message(const SystemConfig& config) {
  try {
    config.validate();
  } catch (const InvalidParameterError& error) {
    return error.what();
  }
  return "";
}

}  // namespace

TEST_CASE("default configuration validates") {
  CHECK_NOTHROW(SystemConfig{}.validate());
}

TEST_CASE("validation names the offending field") {
  SystemConfig config;

  config.cells = 0;
  CHECK(validation_message(config).find("cells") != std::string::npos);
  config = SystemConfig{};

  config.freq_channels = 3;
  config.embb_user_channels = 2;
  CHECK(validation_message(config).find("embb_user_channels") !=
        std::string::npos);
  config = SystemConfig{};

  config.urllc_reliability = 1.0;
  CHECK(validation_message(config).find("urllc_reliability") !=
        std::string::npos);
  config = SystemConfig{};

  config.urllc_activation = 1.5;
  CHECK(validation_message(config).find("urllc_activation") !=
        std::string::npos);
  config = SystemConfig{};

  config.minislots = 0;
  CHECK(validation_message(config).find("minislots") != std::string::npos);
  config = SystemConfig{};

  config.fronthaul_capacity = 0.0;
  CHECK(validation_message(config).find("fronthaul_capacity") !=
        std::string::npos);
  config = SystemConfig{};

  // The downlink power split needs the URLLC power inside the EN budget.
  config.urllc_power = config.en_power * 2.0;
  CHECK(validation_message(config).find("urllc_power") != std::string::npos);
}

TEST_CASE("db conversion and calibration") {
  CHECK(fogran::db_to_linear(0.0) == doctest::Approx(1.0));
  CHECK(fogran::db_to_linear(10.0) == doctest::Approx(10.0));
  CHECK(fogran::db_to_linear(23.0) == doctest::Approx(199.526231497).epsilon(1e-9));
  // constant * power == snr at the reference distance.
  CHECK(fogran::calibrate_pathloss(2.0, 8.0) == doctest::Approx(0.25));
  CHECK_THROWS_AS(fogran::calibrate_pathloss(-1.0, 1.0),
                  InvalidParameterError);
}

TEST_CASE("path loss follows the power law") {
  // c * (d_ref/d)^gamma with c=2, d_ref=1, d=4, gamma=3: 2/64.
  CHECK(fogran::pathloss_gain(2.0, 1.0, 4.0, 3.0) ==
        doctest::Approx(0.03125).epsilon(1e-12));
  CHECK(fogran::pathloss_gain(2.0, 1.0, 1.0, 5.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(fogran::pathloss_gain(1.0, 1.0, 0.0, 3.0),
                  InvalidParameterError);
}

TEST_CASE("four cells sit on a 2r-spaced square grid") {
  SystemConfig config;  // defaults: 4 cells, r = 2
  const Topology topo = fogran::build_topology(config);
  REQUIRE(topo.en_positions.size() == 4);
  CHECK(topo.en_positions[0] == Eigen::Vector2d(0.0, 0.0));
  CHECK(topo.en_positions[1] == Eigen::Vector2d(4.0, 0.0));
  CHECK(topo.en_positions[2] == Eigen::Vector2d(0.0, 4.0));
  CHECK(topo.en_positions[3] == Eigen::Vector2d(4.0, 4.0));
}

TEST_CASE("embb users sit on their serving ring") {
  SystemConfig config;
  const Topology topo = fogran::build_topology(config);
  const int users = config.users_per_cell();
  REQUIRE(topo.embb_positions.size() ==
          static_cast<std::size_t>(config.cells) * users);
  for (int j = 0; j < config.cells; ++j)
    for (int u = 0; u < users; ++u) {
      const double d =
          (topo.embb_positions[j * users + u] - topo.en_positions[j]).norm();
      CHECK(d == doctest::Approx(config.embb_ring_km).epsilon(1e-12));
    }
}

TEST_CASE("own-cell link variance equals the calibrated snr over power") {
  SystemConfig config;
  const Topology topo = fogran::build_topology(config);
  const int users = config.users_per_cell();
  for (int j = 0; j < config.cells; ++j)
    for (int u = 0; u < users; ++u) {
      CHECK(topo.embb_link_var_ul(j, j * users + u) ==
            doctest::Approx(config.embb_snr / config.embb_power)
                .epsilon(1e-12));
      CHECK(topo.embb_link_var_dl(j, j * users + u) ==
            doctest::Approx(config.embb_snr / config.en_power).epsilon(1e-12));
    }
  for (int j = 0; j < config.cells; ++j)
    CHECK(topo.urllc_link_var(j) ==
          doctest::Approx(config.urllc_snr / config.urllc_power)
              .epsilon(1e-12));
}

TEST_CASE("cross-cell link variance follows distance and exponent") {
  SystemConfig config;
  const Topology topo = fogran::build_topology(config);
  const int users = config.users_per_cell();
  const double c_ul = config.embb_snr / config.embb_power;
  for (int i = 0; i < config.cells; ++i)
    for (int n = 0; n < config.cells * users; ++n) {
      const double d = (topo.en_positions[i] - topo.embb_positions[n]).norm();
      const double expected =
          c_ul * std::pow(config.embb_ring_km / d, config.pathloss_exponent);
      CHECK(topo.embb_link_var_ul(i, n) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  // Pinned spot check: user 0 of cell 0 sits at (ring, 0); its link to the
  // EN at (4, 0) spans 4 - ring km.
  const double ring = config.embb_ring_km;
  const double expected =
      c_ul * std::pow(ring / (4.0 - ring), config.pathloss_exponent);
  CHECK(topo.embb_link_var_ul(1, 0) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("per-channel variance matrices map the scheduled user") {
  SystemConfig config;
  config.freq_channels = 4;
  config.embb_user_channels = 2;  // two channels per user, two users per cell
  const Topology topo = fogran::build_topology(config);
  CHECK(topo.user_of_channel(0) == 0);
  CHECK(topo.user_of_channel(1) == 0);
  CHECK(topo.user_of_channel(2) == 1);
  CHECK(topo.user_of_channel(3) == 1);

  const int users = topo.users_per_cell;
  for (int f : {0, 3}) {
    const int u = topo.user_of_channel(f);
    const Eigen::MatrixXd ul = topo.embb_channel_var(Direction::kUplink, f);
    const Eigen::MatrixXd dl = topo.embb_channel_var(Direction::kDownlink, f);
    for (int k = 0; k < config.cells; ++k)
      for (int j = 0; j < config.cells; ++j) {
        CHECK(ul(k, j) == topo.embb_link_var_ul(k, j * users + u));
        // Downlink rows are receiving users: entry (k, j) is the link from
        // EN j to the scheduled user of cell k.
        CHECK(dl(k, j) == topo.embb_link_var_dl(j, k * users + u));
      }
  }
}

TEST_CASE("uplink and downlink variance matrices share their geometry") {
  SystemConfig config;
  const Topology topo = fogran::build_topology(config);
  // Same pathloss, different calibration: the ratio is a global constant.
  const double ratio = config.en_power / config.embb_power;
  const Eigen::MatrixXd ul = topo.embb_channel_var(Direction::kUplink, 1);
  const Eigen::MatrixXd dl = topo.embb_channel_var(Direction::kDownlink, 1);
  for (int k = 0; k < config.cells; ++k)
    for (int j = 0; j < config.cells; ++j)
      CHECK(ul(k, j) == doctest::Approx(dl(j, k) * ratio).epsilon(1e-12));
}
