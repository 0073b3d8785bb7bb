/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Command-line front end: runs the experiments described by a config file
 * and writes the per-scheme rate reports as CSV or JSON.
 */
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fogran/config_io.hpp"
#include "fogran/engine.hpp"
#include "fogran/errors.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& out_path,
                const std::string& format_token,
                const std::optional<std::uint64_t>& seed,
                const std::optional<int>& trials) {
  fogran::RunSpec spec = fogran::load_config(config_path);
  if (seed.has_value()) spec.seed = *seed;
  if (trials.has_value()) {
    if (*trials < 1)
      throw fogran::InvalidParameterError("trials: need at least one trial");
    spec.trials = *trials;
  }
  const fogran::OutputFormat format = fogran::parse_output_format(format_token);

  const int workers = fogran::resolve_workers(0);
  const std::vector<fogran::RateReport> reports =
      fogran::run_spec(spec, workers);

  std::ofstream out(out_path, std::ios::binary);
  if (!out)
    throw fogran::InvalidParameterError("out: cannot open '" + out_path +
                                        "' for writing");
  out << fogran::format_reports(reports, format);
  out.close();
  if (!out)
    throw fogran::InvalidParameterError("out: failed writing '" + out_path +
                                        "'");

  bool all_infeasible = !reports.empty();
  for (const auto& report : reports) {
    std::cout << fogran::scheme_token(report.scheme);
    if (report.axis_value.has_value())
      std::cout << " @ " << report.axis << "=" << *report.axis_value;
    std::cout << ": eMBB " << report.embb_rate << " bit/s/Hz (se "
              << report.embb_std_error << "), URLLC " << report.urllc_rate
              << " bit/s/Hz";
    if (report.flags.budget_infeasible) std::cout << " [budget infeasible]";
    if (report.flags.fronthaul_infeasible)
      std::cout << " [fronthaul infeasible]";
    if (report.flags.urllc_insufficient)
      std::cout << " [urllc tail unresolved]";
    std::cout << "\n";
    if (!report.flags.any()) all_infeasible = false;
  }
  std::cout << "wrote " << reports.size() << " rows to " << out_path
            << " (" << workers << (workers == 1 ? " worker" : " workers")
            << ")\n";
  return all_infeasible ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link-level Monte-Carlo simulator for joint eMBB/URLLC"
               " service multiplexing in a fog radio access network"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand(
      "run", "Run the experiments described by a config file");
  std::string config_path;
  std::string out_path;
  std::string format_token = "csv";
  std::uint64_t seed_value = 0;
  int trials_value = 0;
  run->add_option("--config", config_path, "Run configuration file (INI)")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", out_path, "Output file path")->required();
  run->add_option("--format", format_token, "Output format: csv or json")
      ->capture_default_str();
  auto* seed_opt =
      run->add_option("--seed", seed_value, "Override the config seed");
  auto* trials_opt = run->add_option("--trials", trials_value,
                                     "Override the config trial count");

  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<std::uint64_t> seed;
    if (seed_opt->count() > 0) seed = seed_value;
    std::optional<int> trials;
    if (trials_opt->count() > 0) trials = trials_value;
    return run_command(config_path, out_path, format_token, seed, trials);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
