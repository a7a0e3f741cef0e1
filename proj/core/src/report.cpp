#include "mixpois/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace mixpois {

std::string format_double17(double v) {
  if (v == 0.0) return "0";  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

JsonWriter& JsonWriter::begin_object() {
  before_value();
  out_ += '{';
  comma_stack_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  comma_stack_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  before_value();
  out_ += '[';
  comma_stack_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  comma_stack_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
  if (comma_stack_.back()) out_ += ',';
  comma_stack_.back() = true;
  out_ += '"';
  out_ += name;
  out_ += "\":";
  pending_key_ = true;
  return *this;
}

void JsonWriter::before_value() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (comma_stack_.back()) out_ += ',';
  comma_stack_.back() = true;
}

JsonWriter& JsonWriter::value(double v) {
  before_value();
  out_ += format_double17(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
  before_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  before_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  before_value();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  before_value();
  out_ += '"';
  for (char c : v) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      default: out_ += c;
    }
  }
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::raw_value(std::string_view json_text) {
  before_value();
  out_ += json_text;
  return *this;
}

namespace {

void write_optional(JsonWriter& w, const char* name, double v) {
  if (std::isnan(v)) return;
  w.key(name).value(v);
}

void write_rho_record(JsonWriter& w, const RhoRecord& rec) {
  w.begin_object();
  w.key("rho").value(rec.rho);
  if (!rec.moments.empty()) {
    w.key("moments").begin_array();
    for (const MomentRecord& m : rec.moments) {
      w.begin_object();
      w.key("order").value(m.order);
      w.key("empirical").value(m.empirical);
      w.key("std_error").value(m.std_error);
      w.key("exact").value(m.exact);
      w.key("limit").value(m.limit);
      w.key("limit_gap").value(m.limit_gap);
      w.end_object();
    }
    w.end_array();
  }
  if (!rec.tails.empty()) {
    w.key("tails").begin_array();
    for (const TailRecord& t : rec.tails) {
      w.begin_object();
      w.key("a").value(t.a);
      w.key("empirical").value(t.empirical);
      w.key("bound").value(t.bound);
      w.key("band").value(t.band);
      w.end_object();
    }
    w.end_array();
  }
  write_optional(w, "ks", rec.ks);
  write_optional(w, "ks_threshold", rec.ks_threshold);
  write_optional(w, "ks_wrong", rec.ks_wrong);
  write_optional(w, "w2_empirical", rec.w2_empirical);
  write_optional(w, "w2_std_error", rec.w2_std_error);
  write_optional(w, "w2_exact", rec.w2_exact);
  write_optional(w, "point_mass_freq", rec.point_mass_freq);
  write_optional(w, "point_mass_band", rec.point_mass_band);
  write_optional(w, "cdf_jump_at_zero", rec.cdf_jump_at_zero);
  write_optional(w, "mean_xy", rec.mean_xy);
  write_optional(w, "se_xy", rec.se_xy);
  write_optional(w, "exact_xy", rec.exact_xy);
  write_optional(w, "mean_xstar_y", rec.mean_xstar_y);
  write_optional(w, "se_xstar_y", rec.se_xstar_y);
  write_optional(w, "exact_xstar_y", rec.exact_xstar_y);
  w.end_object();
}

void csv_row(std::ostringstream& out, double rho, const std::string& statistic,
             double value, double reference, double band, bool pass) {
  out << format_double17(rho) << ',' << statistic << ',' << format_double17(value)
      << ',' << format_double17(reference) << ',' << format_double17(band) << ','
      << (pass ? "true" : "false") << '\n';
}

}  // namespace

std::string experiment_report_to_json(const ExperimentReport& report,
                                      std::string_view config_echo_json) {
  JsonWriter w;
  w.begin_object();
  w.key("schema_version").value(std::int64_t{1});
  w.key("experiment").value(report.experiment);
  w.key("config").raw_value(config_echo_json);
  w.key("workers").value(report.workers_used);
  w.key("per_rho").begin_array();
  for (const RhoRecord& rec : report.per_rho) write_rho_record(w, rec);
  w.end_array();
  if (!report.pairs.empty()) {
    w.key("pairs").begin_array();
    for (const PairRecord& p : report.pairs) {
      w.begin_object();
      w.key("j").value(static_cast<std::int64_t>(p.j));
      w.key("k").value(static_cast<std::int64_t>(p.k));
      w.key("w_product_mean").value(p.w_product_mean);
      w.key("w_product_se").value(p.w_product_se);
      w.key("corr").value(p.corr);
      w.key("corr_band").value(p.corr_band);
      w.end_object();
    }
    w.end_array();
  }
  w.key("verdicts").begin_array();
  for (const BoundCheck& v : report.verdicts) {
    w.begin_object();
    w.key("id").value(v.id);
    w.key("lhs").value(v.lhs);
    w.key("rhs").value(v.rhs);
    w.key("margin").value(v.margin);
    w.key("pass").value(v.pass);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string experiment_report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "rho,statistic,value,reference,band,pass\n";
  for (const RhoRecord& rec : report.per_rho) {
    for (const MomentRecord& m : rec.moments) {
      char name[48];
      std::snprintf(name, sizeof(name), "moment_%d", m.order);
      csv_row(out, rec.rho, name, m.empirical, m.exact, 4.0 * m.std_error,
              std::abs(m.empirical - m.exact) <= 4.0 * m.std_error);
    }
    for (const TailRecord& t : rec.tails) {
      char name[48];
      std::snprintf(name, sizeof(name), "tail_a=%s", format_double17(t.a).c_str());
      csv_row(out, rec.rho, name, t.empirical, t.bound, t.band,
              t.empirical <= t.bound + t.band);
    }
    if (!std::isnan(rec.ks)) {
      csv_row(out, rec.rho, "ks", rec.ks, rec.ks_threshold, 0.0,
              rec.ks <= rec.ks_threshold);
    }
    if (!std::isnan(rec.ks_wrong)) {
      csv_row(out, rec.rho, "ks_wrong", rec.ks_wrong, rec.ks_threshold, 0.0,
              rec.ks_wrong > rec.ks_threshold);
    }
    if (!std::isnan(rec.w2_empirical)) {
      csv_row(out, rec.rho, "w2", rec.w2_empirical, rec.w2_exact,
              4.0 * rec.w2_std_error,
              std::abs(rec.w2_empirical - rec.w2_exact) <= 4.0 * rec.w2_std_error);
    }
    if (!std::isnan(rec.point_mass_freq)) {
      csv_row(out, rec.rho, "point_mass_freq", rec.point_mass_freq,
              rec.cdf_jump_at_zero, rec.point_mass_band,
              rec.point_mass_freq >= rec.cdf_jump_at_zero - rec.point_mass_band);
    }
    if (!std::isnan(rec.mean_xy)) {
      csv_row(out, rec.rho, "mean_xy", rec.mean_xy, rec.exact_xy, 4.0 * rec.se_xy,
              std::abs(rec.mean_xy - rec.exact_xy) <= 4.0 * rec.se_xy);
      csv_row(out, rec.rho, "mean_xstar_y", rec.mean_xstar_y, rec.exact_xstar_y,
              4.0 * rec.se_xstar_y,
              std::abs(rec.mean_xstar_y - rec.exact_xstar_y) <= 4.0 * rec.se_xstar_y);
    }
  }
  return out.str();
}

}  // namespace mixpois
