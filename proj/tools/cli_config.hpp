#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixpois/experiments.hpp"

namespace mixpois::cli {

/// Seed used when the config and command line provide none. A fixed
/// constant, never wall-clock time, so unseeded runs are still reproducible.
inline constexpr std::uint64_t kDefaultSeed = 0x9E3779B97F4A7C15ULL;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Effective run configuration: the parsed config file with command-line
/// overrides applied. Serializing it back with run_config_to_json() yields
/// the echo embedded in every report, which re-parses to an equivalent
/// RunConfig.
struct RunConfig {
  std::string command;
  std::optional<MixedPoissonModel> model;
  std::optional<MultiMixedPoissonModel> multi_model;
  std::vector<double> rho_schedule;
  std::int64_t n = 0;
  std::uint64_t seed = kDefaultSeed;
  std::vector<double> thresholds;
  int max_moment_order = 4;
  int workers = 0;  // 0 = number of processors
  double cdf_tolerance = 1e-8;
  std::int64_t ell_max = -1;  // pmf command
  int order = -1;             // centered-poly command
  std::string out;            // empty = default path mixpois_<command>.<format>
  std::string format;         // "json" or "csv"
};

/// Parses a config document. Strict: unknown fields, wrong types and
/// missing required fields are ConfigErrors naming the offending field.
RunConfig parse_run_config_text(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// Serializes the effective configuration (fixed key order, 17-digit
/// floats) for the report echo.
std::string run_config_to_json(const RunConfig& cfg);

ExperimentConfig to_experiment_config(const RunConfig& cfg);

/// Default artifact path for a command when the config names none.
std::string default_out_path(const RunConfig& cfg);

}  // namespace mixpois::cli
