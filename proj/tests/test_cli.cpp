/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * End-to-end tests driving the installed command-line binary.  The build
 * passes its location in the FOGRAN_CLI_PATH compile definition.
 */
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "fogran/config_io.hpp"

namespace {

constexpr const char* kSmallConfig = R"(
[system]
cells = 2
freq_channels = 2
minislots = 3
[run]
trials = 10
seed = 7
schemes = ul_tin, ul_homa
urllc_tail_factor = 100
)";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string out_path = "/tmp/fogran_cli_stdout.txt";
  const std::string err_path = "/tmp/fogran_cli_stderr.txt";
  std::string cmd = env.empty() ? std::string() : env + " ";
  cmd += std::string(FOGRAN_CLI_PATH) + " " + args + " > " + out_path +
         " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  CliResult result;
  if (status != -1 && WIFEXITED(status))
    result.exit_code = WEXITSTATUS(status);
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("a CSV run writes one row per scheme and reports success") {
  const std::string config = "/tmp/fogran_cli_config.ini";
  const std::string out = "/tmp/fogran_cli_out.csv";
  write_file(config, kSmallConfig);

  const CliResult res =
      run_cli("run --config " + config + " --out " + out, "FOGRAN_WORKERS=1");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("wrote 2 rows") != std::string::npos);

  const auto lines = lines_of(slurp(out));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] ==
        "axis_value,scheme,direction,embb_rate,embb_stderr,urllc_rate,eps_D,"
        "infeasible_flag,n_trials,seed");
  CHECK(lines[1].substr(0, 8) == ",tin,ul,");
  CHECK(lines[2].substr(0, 9) == ",homa,ul,");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].find(",10,7") == lines[i].size() - 5);
  }
}

TEST_CASE("a JSON run produces a parseable report array") {
  const std::string config = "/tmp/fogran_cli_config.ini";
  const std::string out = "/tmp/fogran_cli_out.json";
  write_file(config, kSmallConfig);

  const CliResult res = run_cli(
      "run --config " + config + " --out " + out + " --format json",
      "FOGRAN_WORKERS=1");
  CHECK(res.exit_code == 0);
  const auto reports = fogran::parse_reports_json(slurp(out));
  REQUIRE(reports.size() == 2);
  CHECK(fogran::scheme_token(reports[0].scheme) == "ul_tin");
  CHECK(fogran::scheme_token(reports[1].scheme) == "ul_homa");
  CHECK(reports[0].embb_rate > 0.0);
  CHECK(reports[0].urllc_rate > 0.0);
  CHECK(reports[0].seed == 7);
  CHECK(reports[0].trials == 10);
}

TEST_CASE("seed and trial overrides land in the output") {
  const std::string config = "/tmp/fogran_cli_config.ini";
  const std::string out = "/tmp/fogran_cli_override.csv";
  write_file(config, kSmallConfig);

  const CliResult res = run_cli("run --config " + config + " --out " + out +
                                    " --seed 123 --trials 4",
                                "FOGRAN_WORKERS=1");
  CHECK(res.exit_code == 0);
  const auto lines = lines_of(slurp(out));
  REQUIRE(lines.size() == 3);
  for (std::size_t i = 1; i < lines.size(); ++i)
    CHECK(lines[i].find(",4,123") == lines[i].size() - 6);

  const CliResult bad = run_cli("run --config " + config + " --out " + out +
                                    " --trials 0",
                                "FOGRAN_WORKERS=1");
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("error:") != std::string::npos);
}

TEST_CASE("identical runs are byte-identical across worker counts") {
  const std::string config = "/tmp/fogran_cli_config.ini";
  write_file(config, kSmallConfig);
  const std::string serial = "/tmp/fogran_cli_w1.csv";
  const std::string threaded = "/tmp/fogran_cli_w2.csv";

  CHECK(run_cli("run --config " + config + " --out " + serial,
                "FOGRAN_WORKERS=1")
            .exit_code == 0);
  CHECK(run_cli("run --config " + config + " --out " + threaded,
                "FOGRAN_WORKERS=2")
            .exit_code == 0);
  const std::string a = slurp(serial);
  const std::string b = slurp(threaded);
  CHECK(!a.empty());
  CHECK(a == b);
}

TEST_CASE("configuration problems exit with an error") {
  const CliResult missing = run_cli(
      "run --config /tmp/fogran_does_not_exist.ini --out /tmp/fogran_x.csv");
  CHECK(missing.exit_code != 0);

  const std::string config = "/tmp/fogran_cli_bad.ini";
  write_file(config, "[system]\nwarp = 9\n");
  const CliResult bad =
      run_cli("run --config " + config + " --out /tmp/fogran_x.csv");
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("unknown key 'warp'") != std::string::npos);

  write_file(config, kSmallConfig);
  const CliResult unwritable = run_cli(
      "run --config " + config + " --out /tmp/no_such_dir/fogran_x.csv");
  CHECK(unwritable.exit_code == 1);
  CHECK(unwritable.err.find("error:") != std::string::npos);
}

TEST_CASE("a run whose every row is infeasible exits with status 2") {
  const std::string config = "/tmp/fogran_cli_infeasible.ini";
  write_file(config, R"(
[system]
cells = 2
freq_channels = 2
minislots = 3
urllc_activation = 2e-3
[run]
trials = 5
schemes = ul_homa
urllc_tail_factor = 100
)");
  const std::string out = "/tmp/fogran_cli_infeasible.csv";
  const CliResult res =
      run_cli("run --config " + config + " --out " + out, "FOGRAN_WORKERS=1");
  CHECK(res.exit_code == 2);
  CHECK(res.out.find("[budget infeasible]") != std::string::npos);
  const auto lines = lines_of(slurp(out));
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].find(",1,") != std::string::npos);  // flag mask column
}
