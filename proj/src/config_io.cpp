#include "zenochain/config_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace zenochain {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key) {
  if (!j.is_number()) {
    throw ConfigError("key '" + key + "' must be a number");
  }
  return j.get<double>();
}

int require_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) {
    throw ConfigError("key '" + key + "' must be an integer");
  }
  return j.get<int>();
}

std::string require_string(const json& j, const std::string& key) {
  if (!j.is_string()) {
    throw ConfigError("key '" + key + "' must be a string");
  }
  return j.get<std::string>();
}

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

std::string decoherence_mode(const json& j, const std::string& key) {
  std::string mode = require_string(j, key);
  if (mode != "auto" && mode != "on" && mode != "off") {
    throw ConfigError("'" + key + "' must be one of auto/on/off");
  }
  return mode;
}

GhzSpec parse_ghz(const json& block) {
  if (!block.is_object()) throw ConfigError("'ghz' must be an object");
  require_keys(block, "'ghz'", {"decoherence"});
  GhzSpec spec;
  if (block.contains("decoherence")) {
    spec.decoherence = decoherence_mode(block.at("decoherence"), "decoherence");
  }
  return spec;
}

SweepSpec parse_sweep(const json& block, const ChainConfig& chain) {
  if (!block.is_object()) throw ConfigError("'sweep' must be an object");
  require_keys(block, "'sweep'", {"axes", "observable"});
  if (!block.contains("axes") || !block.at("axes").is_array()) {
    throw ConfigError("'sweep' needs an 'axes' array");
  }
  SweepSpec spec;
  for (const json& axis_json : block.at("axes")) {
    if (!axis_json.is_object()) {
      throw ConfigError("sweep axis must be an object");
    }
    require_keys(axis_json, "sweep axis", {"param", "min", "max", "steps"});
    for (const char* key : {"param", "min", "max", "steps"}) {
      if (!axis_json.contains(key)) {
        throw ConfigError(std::string("sweep axis needs '") + key + "'");
      }
    }
    SweepAxis axis;
    axis.label = require_string(axis_json.at("param"), "param");
    axis.param = canonical_param(axis.label, chain);
    axis.lo = require_number(axis_json.at("min"), "min");
    axis.hi = require_number(axis_json.at("max"), "max");
    axis.steps = require_int(axis_json.at("steps"), "steps");
    if (axis.steps < 1) throw ConfigError("sweep axis needs steps >= 1");
    spec.axes.push_back(std::move(axis));
  }
  if (spec.axes.empty() || spec.axes.size() > 2) {
    throw ConfigError("sweep needs one or two axes");
  }
  if (block.contains("observable")) {
    spec.observable = require_string(block.at("observable"), "observable");
  }
  parse_observable(spec.observable);  // reject unknown names at load time
  return spec;
}

PopulationsSpec parse_populations(const json& block) {
  if (!block.is_object()) throw ConfigError("'populations' must be an object");
  require_keys(block, "'populations'", {"t_final", "decoherence"});
  PopulationsSpec spec;
  if (block.contains("t_final")) {
    spec.t_final = require_number(block.at("t_final"), "t_final");
    if (spec.t_final < 0.0) throw ConfigError("'t_final' must be >= 0");
  }
  if (block.contains("decoherence")) {
    spec.decoherence = decoherence_mode(block.at("decoherence"), "decoherence");
  }
  return spec;
}

EprSpec parse_epr(const json& block, const ChainConfig& chain) {
  if (!block.is_object()) throw ConfigError("'epr' must be an object");
  require_keys(block, "'epr'", {"measured_atom"});
  EprSpec spec;
  if (block.contains("measured_atom")) {
    spec.measured_atom = require_int(block.at("measured_atom"), "measured_atom");
    if (spec.measured_atom < 1 || spec.measured_atom > chain.n_atoms) {
      throw ConfigError("'measured_atom' out of range");
    }
  }
  return spec;
}

}  // namespace

ExperimentConfig parse_experiment(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw ConfigError("config root must be a JSON object");
  }

  ExperimentConfig exp;
  ChainConfig& chain = exp.chain;

  static const std::set<std::string> chain_keys = {
      "n_atoms", "g",       "v",       "delta_g1", "delta_gn", "delta_v",
      "omega_1", "omega_n", "gamma",   "kappa_c",  "kappa_f",  "g_hz"};
  static const std::set<std::string> other_keys = {
      "n_samples", "clustering_tol", "output_path",
      "ghz",       "sweep",          "populations",
      "compare-eff", "epr"};

  if (root.contains("n_atoms")) {
    chain.n_atoms = require_int(root.at("n_atoms"), "n_atoms");
  }

  // Aliases with the atom count baked in (omega_3, delta_g3, delta_v2, ...)
  // are accepted wherever they resolve against this chain.
  for (const auto& [key, value] : root.items()) {
    if (chain_keys.count(key) || other_keys.count(key)) continue;
    std::string canonical;
    try {
      canonical = canonical_param(key, chain);
    } catch (const ConfigError&) {
      throw ConfigError("unknown key '" + key + "' in config");
    }
    if (canonical == "omega_1" || canonical == "g" || canonical == "v") {
      // Only numeric-suffixed spellings come through here; plain names were
      // already matched.
      throw ConfigError("unknown key '" + key + "' in config");
    }
    if ((canonical == "omega_n" && root.contains("omega_n")) ||
        (canonical == "delta_gn" && root.contains("delta_gn")) ||
        (canonical.rfind("delta_v", 0) == 0 && root.contains("delta_v"))) {
      throw ConfigError("key '" + key + "' duplicates '" + canonical + "'");
    }
    apply_sweep_param(chain, canonical, require_number(value, key));
  }

  if (root.contains("g")) chain.g = require_number(root.at("g"), "g");
  chain.v = root.contains("v") ? require_number(root.at("v"), "v") : chain.g;
  if (root.contains("delta_g1")) {
    chain.g_dev[0] = require_number(root.at("delta_g1"), "delta_g1");
  }
  if (root.contains("delta_gn")) {
    chain.g_dev[1] = require_number(root.at("delta_gn"), "delta_gn");
  }
  if (root.contains("delta_v")) {
    const json& arr = root.at("delta_v");
    if (!arr.is_array()) {
      throw ConfigError("'delta_v' must be an array of per-fiber deviations");
    }
    chain.v_dev.clear();
    for (const json& item : arr) {
      chain.v_dev.push_back(require_number(item, "delta_v"));
    }
  }
  if (root.contains("omega_n")) {
    chain.omega_n = require_number(root.at("omega_n"), "omega_n");
  }
  if (root.contains("omega_1")) {
    chain.omega_1 = require_number(root.at("omega_1"), "omega_1");
  } else {
    chain.omega_1 = (std::numbers::sqrt2 + 1.0) * chain.omega_n;
    chain.omega_1_locked = true;
  }
  if (root.contains("gamma")) {
    chain.gamma = require_number(root.at("gamma"), "gamma");
  }
  if (root.contains("kappa_c")) {
    chain.kappa_c = require_number(root.at("kappa_c"), "kappa_c");
  }
  if (root.contains("kappa_f")) {
    chain.kappa_f = require_number(root.at("kappa_f"), "kappa_f");
  }
  if (root.contains("g_hz")) {
    chain.g_hz = require_number(root.at("g_hz"), "g_hz");
  }
  chain.validate();

  if (root.contains("n_samples")) {
    exp.n_samples = require_int(root.at("n_samples"), "n_samples");
    if (exp.n_samples < 2) throw ConfigError("'n_samples' must be >= 2");
  }
  if (root.contains("clustering_tol")) {
    exp.clustering_tol = require_number(root.at("clustering_tol"),
                                        "clustering_tol");
    if (exp.clustering_tol < 0.0) {
      throw ConfigError("'clustering_tol' must be >= 0");
    }
  }
  if (root.contains("output_path")) {
    exp.output_path = require_string(root.at("output_path"), "output_path");
  }
  if (root.contains("ghz")) exp.ghz = parse_ghz(root.at("ghz"));
  if (root.contains("sweep")) {
    exp.sweep = parse_sweep(root.at("sweep"), chain);
  }
  if (root.contains("populations")) {
    exp.populations = parse_populations(root.at("populations"));
  }
  if (root.contains("compare-eff")) {
    const json& block = root.at("compare-eff");
    if (!block.is_object()) {
      throw ConfigError("'compare-eff' must be an object");
    }
    require_keys(block, "'compare-eff'", {});
    exp.compare_eff = CompareEffSpec{};
  }
  if (root.contains("epr")) exp.epr = parse_epr(root.at("epr"), chain);
  return exp;
}

ExperimentConfig load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment(buffer.str());
}

}  // namespace zenochain
