/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "fogran/config_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fogran/errors.hpp"

namespace fogran {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::string current;
  std::istringstream stream(s);
  while (std::getline(stream, current, ','))
    if (const std::string item = trim(current); !item.empty())
      items.push_back(item);
  return items;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &used);
  } catch (const std::exception&) {
    throw InvalidParameterError(key + ": not a number: '" + value + "'");
  }
  if (used != value.size())
    throw InvalidParameterError(key + ": not a number: '" + value + "'");
  return parsed;
}

long long parse_integer(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long parsed = 0;
  try {
    parsed = std::stoll(value, &used);
  } catch (const std::exception&) {
    throw InvalidParameterError(key + ": not an integer: '" + value + "'");
  }
  if (used != value.size())
    throw InvalidParameterError(key + ": not an integer: '" + value + "'");
  return parsed;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  // stoull wraps negative inputs around instead of rejecting them.
  if (!value.empty() && (value.front() == '-' || value.front() == '+'))
    throw InvalidParameterError(key + ": not an unsigned integer: '" + value +
                                "'");
  std::size_t used = 0;
  unsigned long long parsed = 0;
  try {
    parsed = std::stoull(value, &used);
  } catch (const std::exception&) {
    throw InvalidParameterError(key + ": not an unsigned integer: '" + value +
                                "'");
  }
  if (used != value.size())
    throw InvalidParameterError(key + ": not an unsigned integer: '" + value +
                                "'");
  return parsed;
}

SweepAxis parse_axis(const std::string& value) {
  if (value == "a_U") return SweepAxis::kActivation;
  if (value == "C") return SweepAxis::kFronthaul;
  if (value == "gamma") return SweepAxis::kPathloss;
  if (value == "L_U") return SweepAxis::kAccessLatency;
  if (value == "P_U") return SweepAxis::kUrllcPower;
  throw InvalidParameterError(
      "axis: unknown sweep axis '" + value +
      "'; valid axes are a_U, C, gamma, L_U, P_U");
}

std::string twelve_digits(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

int flags_mask(const ReportFlags& flags) {
  return (flags.budget_infeasible ? 1 : 0) |
         (flags.fronthaul_infeasible ? 2 : 0) |
         (flags.urllc_insufficient ? 4 : 0);
}

}  // namespace

SchemeConfig parse_scheme(const std::string& token) {
  static const char* kValid =
      "ul_homa, ul_tin, ul_punct, ul_sic, dl_homa, dl_punct, dl_superpos";
  const auto sep = token.find('_');
  if (sep == std::string::npos)
    throw InvalidParameterError("scheme: unknown scheme '" + token +
                                "'; valid schemes are " + kValid);
  const std::string dir = token.substr(0, sep);
  const std::string mux = token.substr(sep + 1);

  SchemeConfig scheme;
  if (dir == "ul")
    scheme.direction = Direction::kUplink;
  else if (dir == "dl")
    scheme.direction = Direction::kDownlink;
  else
    throw InvalidParameterError("scheme: unknown scheme '" + token +
                                "'; valid schemes are " + kValid);

  if (mux == "homa")
    scheme.multiplexing = Multiplexing::kOma;
  else if (mux == "tin")
    scheme.multiplexing = Multiplexing::kNomaTin;
  else if (mux == "punct")
    scheme.multiplexing = Multiplexing::kNomaPuncturing;
  else if (mux == "sic")
    scheme.multiplexing = Multiplexing::kNomaSic;
  else if (mux == "superpos")
    scheme.multiplexing = Multiplexing::kNomaSuperposition;
  else
    throw InvalidParameterError("scheme: unknown scheme '" + token +
                                "'; valid schemes are " + kValid);

  if (!scheme_valid(scheme))
    throw InvalidParameterError("scheme: '" + token +
                                "' is not a supported combination; valid "
                                "schemes are " +
                                std::string(kValid));
  return scheme;
}

OutputFormat parse_output_format(const std::string& token) {
  if (token == "csv") return OutputFormat::kCsv;
  if (token == "json") return OutputFormat::kJson;
  throw InvalidParameterError("format: unknown format '" + token +
                              "'; valid formats are csv, json");
}

Scenario RunSpec::scenario(std::size_t scheme_index) const {
  Scenario sc;
  sc.system = system;
  sc.scheme = schemes.at(scheme_index);
  sc.trials = trials;
  sc.seed = seed;
  sc.urllc_tail_factor = urllc_tail_factor;
  sc.min_urllc_samples = min_urllc_samples;
  sc.max_urllc_samples = max_urllc_samples;
  return sc;
}

RunSpec parse_config(const std::string& text) {
  RunSpec spec;
  int access_latency = 2;
  bool have_embb_ring = false;
  bool have_schemes = false;

  std::string section;
  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto comment = raw.find_first_of("#;");
    if (comment != std::string::npos) raw.erase(comment);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw InvalidParameterError("line " + std::to_string(line_no) +
                                    ": malformed section header '" + line +
                                    "'");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "system" && section != "run" && section != "sweep")
        throw InvalidParameterError(
            "line " + std::to_string(line_no) + ": unknown section '" +
            section + "'; valid sections are system, run, sweep");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidParameterError("line " + std::to_string(line_no) +
                                  ": expected 'key = value', got '" + line +
                                  "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw InvalidParameterError("line " + std::to_string(line_no) +
                                  ": key '" + key +
                                  "' appears before any section");

    if (section == "system") {
      SystemConfig& sys = spec.system;
      if (key == "cells")
        sys.cells = static_cast<int>(parse_integer(key, value));
      else if (key == "cell_radius_km")
        sys.cell_radius_km = parse_double(key, value);
      else if (key == "embb_ring_km") {
        sys.embb_ring_km = parse_double(key, value);
        have_embb_ring = true;
      } else if (key == "urllc_ring_km")
        sys.urllc_ring_km = parse_double(key, value);
      else if (key == "pathloss_exponent")
        sys.pathloss_exponent = parse_double(key, value);
      else if (key == "freq_channels")
        sys.freq_channels = static_cast<int>(parse_integer(key, value));
      else if (key == "embb_user_channels")
        sys.embb_user_channels = static_cast<int>(parse_integer(key, value));
      else if (key == "minislots")
        sys.minislots = static_cast<int>(parse_integer(key, value));
      else if (key == "ru_subcarriers")
        sys.ru_subcarriers = static_cast<int>(parse_integer(key, value));
      else if (key == "ru_symbols")
        sys.ru_symbols = static_cast<int>(parse_integer(key, value));
      else if (key == "fronthaul_capacity")
        sys.fronthaul_capacity = parse_double(key, value);
      else if (key == "urllc_reliability")
        sys.urllc_reliability = parse_double(key, value);
      else if (key == "urllc_activation")
        sys.urllc_activation = parse_double(key, value);
      else if (key == "embb_power_dbm")
        sys.embb_power = db_to_linear(parse_double(key, value));
      else if (key == "urllc_power_dbm")
        sys.urllc_power = db_to_linear(parse_double(key, value));
      else if (key == "en_power_dbm")
        sys.en_power = db_to_linear(parse_double(key, value));
      else if (key == "embb_snr_db")
        sys.embb_snr = db_to_linear(parse_double(key, value));
      else if (key == "urllc_snr_db")
        sys.urllc_snr = db_to_linear(parse_double(key, value));
      else if (key == "access_latency")
        access_latency = static_cast<int>(parse_integer(key, value));
      else
        throw InvalidParameterError("unknown key '" + key +
                                    "' in section [system]");
    } else if (section == "run") {
      if (key == "trials")
        spec.trials = static_cast<int>(parse_integer(key, value));
      else if (key == "seed")
        spec.seed = parse_u64(key, value);
      else if (key == "schemes") {
        spec.schemes.clear();
        for (const auto& token : split_list(value))
          spec.schemes.push_back(parse_scheme(token));
        have_schemes = true;
      } else if (key == "urllc_tail_factor")
        spec.urllc_tail_factor = parse_double(key, value);
      else if (key == "min_urllc_samples")
        spec.min_urllc_samples =
            static_cast<std::size_t>(parse_u64(key, value));
      else if (key == "max_urllc_samples")
        spec.max_urllc_samples =
            static_cast<std::size_t>(parse_u64(key, value));
      else
        throw InvalidParameterError("unknown key '" + key +
                                    "' in section [run]");
    } else {
      if (key == "axis")
        spec.axis = parse_axis(value);
      else if (key == "values") {
        spec.sweep_values.clear();
        for (const auto& token : split_list(value))
          spec.sweep_values.push_back(parse_double("values", token));
      } else
        throw InvalidParameterError("unknown key '" + key +
                                    "' in section [sweep]");
    }
  }

  if (!have_embb_ring)
    spec.system.embb_ring_km =
        spec.system.cell_radius_km * 0.86602540378443865;
  if (!have_schemes)
    for (const char* token : {"ul_homa", "ul_tin", "ul_punct", "ul_sic"})
      spec.schemes.push_back(parse_scheme(token));
  if (spec.schemes.empty())
    throw InvalidParameterError("schemes: need at least one scheme");
  for (auto& scheme : spec.schemes) scheme.access_latency = access_latency;

  if (spec.axis.has_value() && spec.sweep_values.empty())
    throw InvalidParameterError("sweep: axis set but no values given");
  if (!spec.axis.has_value() && !spec.sweep_values.empty())
    throw InvalidParameterError("sweep: values set but no axis given");
  if (spec.trials < 1)
    throw InvalidParameterError("trials: need at least one trial");

  spec.system.validate();
  return spec;
}

RunSpec load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InvalidParameterError("config: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::vector<RateReport> run_spec(const RunSpec& spec, int workers) {
  std::vector<RateReport> reports;
  if (spec.axis.has_value()) {
    // Axis value major so each scheme's curve interleaves identically.
    std::vector<std::vector<RateReport>> per_scheme;
    per_scheme.reserve(spec.schemes.size());
    for (std::size_t s = 0; s < spec.schemes.size(); ++s)
      per_scheme.push_back(
          sweep(spec.scenario(s), *spec.axis, spec.sweep_values, workers));
    for (std::size_t v = 0; v < spec.sweep_values.size(); ++v)
      for (std::size_t s = 0; s < spec.schemes.size(); ++s)
        reports.push_back(std::move(per_scheme[s][v]));
  } else {
    for (std::size_t s = 0; s < spec.schemes.size(); ++s)
      reports.push_back(run_experiment(spec.scenario(s), workers));
  }
  return reports;
}

std::string to_csv(const std::vector<RateReport>& reports) {
  std::ostringstream out;
  out << "axis_value,scheme,direction,embb_rate,embb_stderr,urllc_rate,"
         "eps_D,infeasible_flag,n_trials,seed\n";
  for (const auto& r : reports) {
    if (r.axis_value.has_value()) out << twelve_digits(*r.axis_value);
    out << ',' << multiplexing_token(r.scheme.multiplexing) << ','
        << direction_token(r.scheme.direction) << ','
        << twelve_digits(r.embb_rate) << ',' << twelve_digits(r.embb_std_error)
        << ',' << twelve_digits(r.urllc_rate) << ','
        << twelve_digits(r.decode_error) << ',' << flags_mask(r.flags) << ','
        << r.trials << ',' << r.seed << '\n';
  }
  return out.str();
}

std::string to_json(const std::vector<RateReport>& reports) {
  json rows = json::array();
  for (const auto& r : reports) {
    json row;
    row["axis"] = r.axis;
    if (r.axis_value.has_value())
      row["axis_value"] = *r.axis_value;
    else
      row["axis_value"] = nullptr;
    row["scheme"] = multiplexing_token(r.scheme.multiplexing);
    row["direction"] = direction_token(r.scheme.direction);
    row["access_latency"] = r.scheme.access_latency;
    row["embb_rate"] = r.embb_rate;
    row["embb_stderr"] = r.embb_std_error;
    row["urllc_rate"] = r.urllc_rate;
    row["eps_D"] = r.decode_error;
    row["flags"] = {{"budget_infeasible", r.flags.budget_infeasible},
                    {"fronthaul_infeasible", r.flags.fronthaul_infeasible},
                    {"urllc_insufficient", r.flags.urllc_insufficient}};
    row["sigma2_mean"] = r.sigma2_mean;
    row["sigma2_max"] = r.sigma2_max;
    row["n_trials"] = r.trials;
    row["seed"] = r.seed;
    row["urllc_samples_per_cell"] = r.urllc_samples_per_cell;
    rows.push_back(std::move(row));
  }
  return rows.dump(2) + "\n";
}

std::vector<RateReport> parse_reports_json(const std::string& text) {
  const json rows = json::parse(text);
  std::vector<RateReport> reports;
  reports.reserve(rows.size());
  for (const auto& row : rows) {
    RateReport r;
    r.axis = row.at("axis").get<std::string>();
    if (!row.at("axis_value").is_null())
      r.axis_value = row.at("axis_value").get<double>();
    const SchemeConfig scheme = parse_scheme(
        row.at("direction").get<std::string>() + "_" +
        row.at("scheme").get<std::string>());
    r.scheme = scheme;
    r.scheme.access_latency = row.at("access_latency").get<int>();
    r.embb_rate = row.at("embb_rate").get<double>();
    r.embb_std_error = row.at("embb_stderr").get<double>();
    r.urllc_rate = row.at("urllc_rate").get<double>();
    r.decode_error = row.at("eps_D").get<double>();
    const auto& flags = row.at("flags");
    r.flags.budget_infeasible = flags.at("budget_infeasible").get<bool>();
    r.flags.fronthaul_infeasible =
        flags.at("fronthaul_infeasible").get<bool>();
    r.flags.urllc_insufficient = flags.at("urllc_insufficient").get<bool>();
    r.sigma2_mean = row.at("sigma2_mean").get<double>();
    r.sigma2_max = row.at("sigma2_max").get<double>();
    r.trials = row.at("n_trials").get<int>();
    r.seed = row.at("seed").get<std::uint64_t>();
    r.urllc_samples_per_cell =
        row.at("urllc_samples_per_cell").get<std::size_t>();
    reports.push_back(std::move(r));
  }
  return reports;
}

std::string format_reports(const std::vector<RateReport>& reports,
                           OutputFormat format) {
  return format == OutputFormat::kCsv ? to_csv(reports) : to_json(reports);
}

bool operator==(const ReportFlags& a, const ReportFlags& b) {
  return a.budget_infeasible == b.budget_infeasible &&
         a.fronthaul_infeasible == b.fronthaul_infeasible &&
         a.urllc_insufficient == b.urllc_insufficient;
}

bool operator==(const SchemeConfig& a, const SchemeConfig& b) {
  return a.direction == b.direction && a.multiplexing == b.multiplexing &&
         a.access_latency == b.access_latency;
}

bool operator==(const RateReport& a, const RateReport& b) {
  return a.scheme == b.scheme && a.axis == b.axis &&
         a.axis_value == b.axis_value && a.embb_rate == b.embb_rate &&
         a.embb_std_error == b.embb_std_error &&
         a.urllc_rate == b.urllc_rate && a.decode_error == b.decode_error &&
         a.flags == b.flags && a.sigma2_mean == b.sigma2_mean &&
         a.sigma2_max == b.sigma2_max && a.trials == b.trials &&
         a.seed == b.seed &&
         a.urllc_samples_per_cell == b.urllc_samples_per_cell;
}

}  // namespace fogran
