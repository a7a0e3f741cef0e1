#include "cli_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mixpois/report.hpp"

namespace mixpois::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

void check_fields(const json& obj, const std::set<std::string>& allowed,
                  const std::string& context) {
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      fail("config error: unknown field \"" + item.key() + "\" in " + context);
    }
  }
}

double get_number(const json& obj, const std::string& field, const std::string& context) {
  if (!obj.contains(field)) fail("config error: missing field \"" + field + "\" in " + context);
  const json& v = obj.at(field);
  if (!v.is_number()) fail("config error: field \"" + field + "\" in " + context + " must be a number");
  return v.get<double>();
}

std::int64_t get_integer(const json& obj, const std::string& field,
                         const std::string& context) {
  if (!obj.contains(field)) fail("config error: missing field \"" + field + "\" in " + context);
  const json& v = obj.at(field);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    fail("config error: field \"" + field + "\" in " + context + " must be an integer");
  }
  return v.get<std::int64_t>();
}

std::string get_string(const json& obj, const std::string& field,
                       const std::string& context) {
  if (!obj.contains(field)) fail("config error: missing field \"" + field + "\" in " + context);
  const json& v = obj.at(field);
  if (!v.is_string()) fail("config error: field \"" + field + "\" in " + context + " must be a string");
  return v.get<std::string>();
}

std::vector<double> get_number_array(const json& obj, const std::string& field,
                                     const std::string& context) {
  if (!obj.contains(field)) fail("config error: missing field \"" + field + "\" in " + context);
  const json& v = obj.at(field);
  if (!v.is_array()) fail("config error: field \"" + field + "\" in " + context + " must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) fail("config error: field \"" + field + "\" in " + context + " must contain numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

MixingDistribution parse_mixing(const json& obj, const std::string& context) {
  if (!obj.is_object()) fail("config error: " + context + " must be an object");
  const std::string kind = get_string(obj, "kind", context);
  if (kind == "degenerate") {
    check_fields(obj, {"kind", "value"}, context);
    return MixingDistribution::degenerate(get_number(obj, "value", context));
  }
  if (kind == "gamma") {
    check_fields(obj, {"kind", "shape", "rate"}, context);
    return MixingDistribution::gamma(get_number(obj, "shape", context),
                                     get_number(obj, "rate", context));
  }
  if (kind == "discrete") {
    check_fields(obj, {"kind", "atoms"}, context);
    if (!obj.contains("atoms") || !obj.at("atoms").is_array()) {
      fail("config error: field \"atoms\" in " + context + " must be an array");
    }
    std::vector<MixingDistribution::Atom> atoms;
    for (const json& a : obj.at("atoms")) {
      const std::string atom_ctx = context + ".atoms[]";
      if (!a.is_object()) fail("config error: " + atom_ctx + " must be an object");
      check_fields(a, {"value", "prob"}, atom_ctx);
      atoms.push_back({get_number(a, "value", atom_ctx), get_number(a, "prob", atom_ctx)});
    }
    return MixingDistribution::discrete(std::move(atoms));
  }
  if (kind == "zero_inflated") {
    check_fields(obj, {"kind", "p", "base"}, context);
    if (!obj.contains("base")) fail("config error: missing field \"base\" in " + context);
    return MixingDistribution::zero_inflated(get_number(obj, "p", context),
                                             parse_mixing(obj.at("base"), context + ".base"));
  }
  if (kind == "lognormal") {
    check_fields(obj, {"kind", "location", "scale"}, context);
    return MixingDistribution::lognormal(get_number(obj, "location", context),
                                         get_number(obj, "scale", context));
  }
  fail("config error: unknown mixing kind \"" + kind + "\" in " + context);
}

MixedPoissonModel parse_model(const json& obj) {
  if (!obj.is_object()) fail("config error: \"model\" must be an object");
  check_fields(obj, {"mixing", "rho"}, "model");
  if (!obj.contains("mixing")) fail("config error: missing field \"mixing\" in model");
  return MixedPoissonModel(parse_mixing(obj.at("mixing"), "model.mixing"),
                           get_number(obj, "rho", "model"));
}

MultiMixedPoissonModel parse_multi_model(const json& obj) {
  if (!obj.is_object()) fail("config error: \"model\" must be an object");
  const std::string joint = get_string(obj, "joint", "model");
  std::vector<double> rhos = get_number_array(obj, "rhos", "model");
  if (joint == "comonotone") {
    check_fields(obj, {"joint", "mixing", "rhos"}, "model");
    if (!obj.contains("mixing")) fail("config error: missing field \"mixing\" in model");
    return MultiMixedPoissonModel::comonotone(
        parse_mixing(obj.at("mixing"), "model.mixing"), std::move(rhos));
  }
  if (joint == "independent") {
    check_fields(obj, {"joint", "components", "rhos"}, "model");
    if (!obj.contains("components") || !obj.at("components").is_array()) {
      fail("config error: field \"components\" in model must be an array");
    }
    std::vector<MixingDistribution> components;
    for (const json& c : obj.at("components")) {
      components.push_back(parse_mixing(c, "model.components[]"));
    }
    return MultiMixedPoissonModel::independent(std::move(components), std::move(rhos));
  }
  if (joint == "table") {
    check_fields(obj, {"joint", "atoms", "rhos"}, "model");
    if (!obj.contains("atoms") || !obj.at("atoms").is_array()) {
      fail("config error: field \"atoms\" in model must be an array");
    }
    std::vector<MultiMixedPoissonModel::JointAtom> atoms;
    for (const json& a : obj.at("atoms")) {
      if (!a.is_object()) fail("config error: model.atoms[] must be objects");
      check_fields(a, {"values", "prob"}, "model.atoms[]");
      MultiMixedPoissonModel::JointAtom atom;
      atom.values = get_number_array(a, "values", "model.atoms[]");
      atom.prob = get_number(a, "prob", "model.atoms[]");
      atoms.push_back(std::move(atom));
    }
    return MultiMixedPoissonModel::joint_table(std::move(atoms), std::move(rhos));
  }
  fail("config error: unknown joint mixing \"" + joint + "\" in model");
}

struct CommandSpec {
  std::set<std::string> allowed;
  std::set<std::string> required;
};

const CommandSpec& command_spec(const std::string& command) {
  static const std::set<std::string> common = {"command", "seed", "out", "format", "workers"};
  auto make = [](std::initializer_list<const char*> allowed,
                 std::initializer_list<const char*> required) {
    CommandSpec spec;
    spec.allowed = common;
    for (const char* a : allowed) spec.allowed.insert(a);
    for (const char* r : required) {
      spec.allowed.insert(r);
      spec.required.insert(r);
    }
    return spec;
  };
  static const std::map<std::string, CommandSpec> specs = {
      {"pmf", make({}, {"model", "ell_max"})},
      {"moments", make({"max_moment_order"}, {"model"})},
      {"centered-poly", make({}, {"order"})},
      {"simulate", make({}, {"model", "n"})},
      {"clt", make({"max_moment_order", "cdf_tolerance"}, {"model", "rho_schedule", "n"})},
      {"scaling", make({"thresholds", "max_moment_order"}, {"model", "rho_schedule", "n"})},
      {"wrong-centering", make({"cdf_tolerance"}, {"model", "n"})},
      {"point-mass", make({}, {"model", "rho_schedule", "n"})},
      {"multivariate", make({"cdf_tolerance"}, {"model", "n"})},
  };
  auto it = specs.find(command);
  if (it == specs.end()) {
    fail("config error: unknown command \"" + command + "\"");
  }
  return it->second;
}

}  // namespace

RunConfig parse_run_config_text(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("config error: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("config error: top-level document must be an object");

  RunConfig cfg;
  cfg.command = get_string(doc, "command", "top-level");
  const CommandSpec& spec = command_spec(cfg.command);
  check_fields(doc, spec.allowed, "top-level");
  for (const std::string& field : spec.required) {
    if (!doc.contains(field)) {
      fail("config error: missing field \"" + field + "\" for command " + cfg.command);
    }
  }

  if (doc.contains("model")) {
    if (cfg.command == "multivariate") {
      cfg.multi_model = parse_multi_model(doc.at("model"));
    } else {
      cfg.model = parse_model(doc.at("model"));
    }
  }
  if (doc.contains("rho_schedule")) cfg.rho_schedule = get_number_array(doc, "rho_schedule", "top-level");
  if (doc.contains("n")) cfg.n = get_integer(doc, "n", "top-level");
  if (doc.contains("seed")) {
    const std::int64_t raw = get_integer(doc, "seed", "top-level");
    cfg.seed = doc.at("seed").is_number_unsigned() ? doc.at("seed").get<std::uint64_t>()
                                                   : static_cast<std::uint64_t>(raw);
  }
  if (doc.contains("thresholds")) {
    cfg.thresholds = get_number_array(doc, "thresholds", "top-level");
  } else if (cfg.command == "scaling") {
    cfg.thresholds = {0.5, 1.0};
  }
  if (doc.contains("max_moment_order")) {
    cfg.max_moment_order = static_cast<int>(get_integer(doc, "max_moment_order", "top-level"));
  }
  if (doc.contains("workers")) cfg.workers = static_cast<int>(get_integer(doc, "workers", "top-level"));
  if (doc.contains("cdf_tolerance")) cfg.cdf_tolerance = get_number(doc, "cdf_tolerance", "top-level");
  if (doc.contains("ell_max")) cfg.ell_max = get_integer(doc, "ell_max", "top-level");
  if (doc.contains("order")) cfg.order = static_cast<int>(get_integer(doc, "order", "top-level"));
  if (doc.contains("out")) cfg.out = get_string(doc, "out", "top-level");
  if (doc.contains("format")) cfg.format = get_string(doc, "format", "top-level");

  if (cfg.format.empty()) {
    cfg.format = (cfg.command == "pmf" || cfg.command == "simulate") ? "csv" : "json";
  }
  if (cfg.format != "json" && cfg.format != "csv") {
    fail("config error: field \"format\" must be \"json\" or \"csv\"");
  }
  if (cfg.command == "pmf" && cfg.ell_max < 0) {
    fail("config error: field \"ell_max\" must be >= 0");
  }
  if (cfg.command == "centered-poly" && cfg.order < 0) {
    fail("config error: field \"order\" must be >= 0");
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("config error: cannot open config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config_text(buffer.str());
}

namespace {

void write_mixing(JsonWriter& w, const MixingDistribution& mixing) {
  using Kind = MixingDistribution::Kind;
  w.begin_object();
  switch (mixing.kind()) {
    case Kind::Degenerate:
      w.key("kind").value("degenerate");
      w.key("value").value(std::get<MixingDistribution::DegenerateParams>(mixing.params()).value);
      break;
    case Kind::Gamma: {
      const auto& g = std::get<MixingDistribution::GammaParams>(mixing.params());
      w.key("kind").value("gamma");
      w.key("shape").value(g.shape);
      w.key("rate").value(g.rate);
      break;
    }
    case Kind::Discrete: {
      w.key("kind").value("discrete");
      w.key("atoms").begin_array();
      for (const auto& a : std::get<MixingDistribution::DiscreteParams>(mixing.params()).atoms) {
        w.begin_object();
        w.key("value").value(a.value);
        w.key("prob").value(a.prob);
        w.end_object();
      }
      w.end_array();
      break;
    }
    case Kind::ZeroInflated: {
      const auto& z = std::get<MixingDistribution::ZeroInflatedParams>(mixing.params());
      w.key("kind").value("zero_inflated");
      w.key("p").value(z.p);
      w.key("base");
      write_mixing(w, *z.base);
      break;
    }
    case Kind::Lognormal: {
      const auto& l = std::get<MixingDistribution::LognormalParams>(mixing.params());
      w.key("kind").value("lognormal");
      w.key("location").value(l.location);
      w.key("scale").value(l.scale);
      break;
    }
  }
  w.end_object();
}

void write_model(JsonWriter& w, const MixedPoissonModel& model) {
  w.begin_object();
  w.key("mixing");
  write_mixing(w, model.mixing());
  w.key("rho").value(model.rho());
  w.end_object();
}

void write_multi_model(JsonWriter& w, const MultiMixedPoissonModel& model) {
  using JointKind = MultiMixedPoissonModel::JointKind;
  w.begin_object();
  switch (model.joint_kind()) {
    case JointKind::Comonotone:
      w.key("joint").value("comonotone");
      w.key("mixing");
      write_mixing(w, std::get<MultiMixedPoissonModel::ComonotoneParams>(model.joint_params()).shared);
      break;
    case JointKind::Independent: {
      w.key("joint").value("independent");
      w.key("components").begin_array();
      for (const auto& c :
           std::get<MultiMixedPoissonModel::IndependentParams>(model.joint_params()).components) {
        write_mixing(w, c);
      }
      w.end_array();
      break;
    }
    case JointKind::JointTable: {
      w.key("joint").value("table");
      w.key("atoms").begin_array();
      for (const auto& a :
           std::get<MultiMixedPoissonModel::JointTableParams>(model.joint_params()).atoms) {
        w.begin_object();
        w.key("values").begin_array();
        for (double v : a.values) w.value(v);
        w.end_array();
        w.key("prob").value(a.prob);
        w.end_object();
      }
      w.end_array();
      break;
    }
  }
  w.key("rhos").begin_array();
  for (double r : model.rhos()) w.value(r);
  w.end_array();
  w.end_object();
}

}  // namespace

std::string run_config_to_json(const RunConfig& cfg) {
  JsonWriter w;
  w.begin_object();
  w.key("command").value(cfg.command);
  if (cfg.model) {
    w.key("model");
    write_model(w, *cfg.model);
  }
  if (cfg.multi_model) {
    w.key("model");
    write_multi_model(w, *cfg.multi_model);
  }
  if (!cfg.rho_schedule.empty()) {
    w.key("rho_schedule").begin_array();
    for (double r : cfg.rho_schedule) w.value(r);
    w.end_array();
  }
  if (cfg.n > 0) w.key("n").value(cfg.n);
  w.key("seed").value(cfg.seed);
  if (!cfg.thresholds.empty()) {
    w.key("thresholds").begin_array();
    for (double a : cfg.thresholds) w.value(a);
    w.end_array();
  }
  if (cfg.command == "moments" || cfg.command == "clt" || cfg.command == "scaling") {
    w.key("max_moment_order").value(cfg.max_moment_order);
  }
  w.key("workers").value(cfg.workers);
  if (cfg.command == "clt" || cfg.command == "wrong-centering" || cfg.command == "multivariate") {
    w.key("cdf_tolerance").value(cfg.cdf_tolerance);
  }
  if (cfg.command == "pmf") w.key("ell_max").value(cfg.ell_max);
  if (cfg.command == "centered-poly") w.key("order").value(cfg.order);
  if (!cfg.out.empty()) w.key("out").value(cfg.out);
  w.key("format").value(cfg.format);
  w.end_object();
  return w.str();
}

ExperimentConfig to_experiment_config(const RunConfig& cfg) {
  ExperimentConfig out;
  out.model = cfg.model;
  out.multi_model = cfg.multi_model;
  out.rho_schedule = cfg.rho_schedule;
  out.sample_size = cfg.n;
  out.master_seed = cfg.seed;
  out.thresholds = cfg.thresholds;
  out.max_moment_order = cfg.max_moment_order;
  out.workers = cfg.workers;
  out.cdf_tolerance = cfg.cdf_tolerance;
  return out;
}

std::string default_out_path(const RunConfig& cfg) {
  return "mixpois_" + cfg.command + "." + cfg.format;
}

}  // namespace mixpois::cli
