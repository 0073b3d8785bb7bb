/*
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef FOGRAN_CONFIG_IO_HPP
#define FOGRAN_CONFIG_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "fogran/engine.hpp"
#include "fogran/model.hpp"
#include "fogran/scheme.hpp"

namespace fogran {

enum class OutputFormat { kCsv, kJson };

OutputFormat parse_output_format(const std::string& token);

/// A full run request: the system, the schemes to evaluate, the sampling
/// budget and an optional parameter sweep.
struct RunSpec {
  SystemConfig system;
  std::vector<SchemeConfig> schemes;
  int trials = 500;
  std::uint64_t seed = 1;
  std::optional<SweepAxis> axis;
  std::vector<double> sweep_values;
  double urllc_tail_factor = 400.0;
  std::size_t min_urllc_samples = 100000;
  std::size_t max_urllc_samples = 2000000;

  /// The scenario evaluating one of the schemes.
  Scenario scenario(std::size_t scheme_index) const;
};

/// Parses the INI-style key/value run configuration (flat sections
/// [system], [run], [sweep]; '#' or ';' comments).  An empty document yields
/// the full default RunSpec.  Unknown sections, unknown keys, malformed
/// values and out-of-range parameters raise InvalidParameterError naming the
/// offender.
RunSpec parse_config(const std::string& text);

/// parse_config over a file's contents.
RunSpec load_config(const std::string& path);

/// Runs every configured scheme (times every sweep value, when a sweep is
/// configured) and returns the reports in deterministic order: axis value
/// major, scheme order as configured.
std::vector<RateReport> run_spec(const RunSpec& spec, int workers = 0);

/// CSV with a fixed header and one row per report; numbers carry 12
/// significant digits.
std::string to_csv(const std::vector<RateReport>& reports);

/// JSON array carrying every report field, value-exact for round-trips.
std::string to_json(const std::vector<RateReport>& reports);

/// Inverse of to_json.
std::vector<RateReport> parse_reports_json(const std::string& text);

std::string format_reports(const std::vector<RateReport>& reports,
                           OutputFormat format);

bool operator==(const ReportFlags& a, const ReportFlags& b);
bool operator==(const RateReport& a, const RateReport& b);
bool operator==(const SchemeConfig& a, const SchemeConfig& b);

}  // namespace fogran

#endif  // FOGRAN_CONFIG_IO_HPP
