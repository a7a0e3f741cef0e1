#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mixpois/experiments.hpp"

namespace mixpois {

/// Fixed-width floating-point formatting: 17 significant digits, enough to
/// round-trip any double, so identical runs serialize to identical bytes.
std::string format_double17(double v);

/// Minimal JSON emitter with deterministic key order and format_double17
/// number formatting. nlohmann-style dump would re-format numbers with its
/// own shortest-representation logic; reports pin the 17-digit convention
/// instead.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);
  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  /// Splices pre-serialized JSON text (e.g. a config echo) as a value.
  JsonWriter& raw_value(std::string_view json_text);

  const std::string& str() const { return out_; }

 private:
  void before_value();
  std::string out_;
  // true while the next emit at this depth needs a separating comma
  std::vector<bool> comma_stack_{false};
  bool pending_key_ = false;
};

/// Report document: {"schema_version": 1, "experiment": ..., "config": <echo>,
/// "workers": ..., "per_rho": [...], "pairs": [...], "verdicts": [...]}
std::string experiment_report_to_json(const ExperimentReport& report,
                                      std::string_view config_echo_json);

/// Flat plotting table, one row per rho per statistic:
/// rho,statistic,value,reference,band,pass (LF line endings).
std::string experiment_report_to_csv(const ExperimentReport& report);

}  // namespace mixpois
