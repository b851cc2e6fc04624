#include "torusfhn/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "torusfhn/errors.hpp"

namespace torusfhn {

using nlohmann::json;

namespace {

double real_field(const json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(key, "config key '" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(key, "config key '" + key + "' must be finite");
  return d;
}

int integer_field(const json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) throw ConfigError(key, "config key '" + key + "' must be an integer");
  return v.get<int>();
}

std::vector<double> real_array(const json& obj, const std::string& key, const std::string& path, std::size_t len) {
  if (!obj.contains(key)) throw ConfigError(path, "config key '" + path + "' is required");
  const auto& arr = obj.at(key);
  if (!arr.is_array() || arr.size() != len) {
    throw ConfigError(path, "config key '" + path + "' must be an array of " + std::to_string(len) + " numbers");
  }
  std::vector<double> out;
  out.reserve(len);
  for (const auto& v : arr) {
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      throw ConfigError(path, "config key '" + path + "' must contain finite numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

void append_torus_ic(const json& obj, const std::string& path, int n, NetworkState& state) {
  if (!obj.is_object()) throw ConfigError(path, "config key '" + path + "' must be an object with x and y");
  for (const auto& [key, _] : obj.items()) {
    if (key != "x" && key != "y") throw ConfigError(path + "." + key, "unknown config key '" + path + "." + key + "'");
  }
  const std::size_t count = static_cast<std::size_t>(n) * n;
  const auto xs = real_array(obj, "x", path + ".x", count);
  const auto ys = real_array(obj, "y", path + ".y", count);
  for (std::size_t i = 0; i < count; ++i) {
    state.push_back(xs[i]);
    state.push_back(ys[i]);
  }
}

}  // namespace

NetworkState default_initial_state(int n, bool two_tori) {
  if (!two_tori) return tiled_initial_conditions(n);
  NetworkState state;
  if (n == 11) {
    state = listed_initial_conditions_11();
    state.resize(torus_dim(n));
  } else {
    state = tiled_initial_conditions(n);
  }
  const auto second = uniform_initial_conditions(n);
  state.insert(state.end(), second.begin(), second.end());
  return state;
}

NetworkState RunConfig::initial_state() const {
  if (ic) return *ic;
  return default_initial_state(torus.n, two_tori());
}

RunConfig parse_run_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
  static const std::set<std::string> known = {"n",       "a",     "b",  "c",
                                              "gamma",   "delta", "epsilon", "dt",
                                              "t_end",   "transient_discard", "record_stride", "ic"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) throw ConfigError(key, "unknown config key '" + key + "'");
  }
  for (const char* key : {"n", "a", "b", "c", "gamma", "delta"}) {
    if (!doc.contains(key)) throw ConfigError(key, std::string("config key '") + key + "' is required");
  }

  RunConfig cfg;
  cfg.torus.n = integer_field(doc, "n");
  if (cfg.torus.n < 1) throw ConfigError("n", "config key 'n' must be >= 1");
  cfg.torus.neuron = {real_field(doc, "a"), real_field(doc, "b"), real_field(doc, "c")};
  cfg.torus.gamma = real_field(doc, "gamma");
  cfg.torus.delta = real_field(doc, "delta");
  if (doc.contains("epsilon")) cfg.epsilon = real_field(doc, "epsilon");

  if (doc.contains("dt")) {
    cfg.settings.dt = real_field(doc, "dt");
    if (!(cfg.settings.dt > 0.0)) throw ConfigError("dt", "config key 'dt' must be positive");
  }
  if (doc.contains("t_end")) {
    cfg.settings.t_end = real_field(doc, "t_end");
    if (!(cfg.settings.t_end > 0.0)) throw ConfigError("t_end", "config key 't_end' must be positive");
  }
  if (doc.contains("transient_discard")) {
    cfg.settings.transient_discard = real_field(doc, "transient_discard");
    if (!(cfg.settings.transient_discard >= 0.0)) {
      throw ConfigError("transient_discard", "config key 'transient_discard' must be >= 0");
    }
  } else if (cfg.settings.transient_discard >= cfg.settings.t_end) {
    cfg.settings.transient_discard = 0.5 * cfg.settings.t_end;
  }
  if (!(cfg.settings.t_end > cfg.settings.transient_discard)) {
    throw ConfigError("t_end", "config key 't_end' must exceed transient_discard");
  }
  if (doc.contains("record_stride")) {
    cfg.settings.record_stride = integer_field(doc, "record_stride");
    if (cfg.settings.record_stride < 1) {
      throw ConfigError("record_stride", "config key 'record_stride' must be >= 1");
    }
  }

  if (doc.contains("ic")) {
    const auto& ic = doc.at("ic");
    NetworkState state;
    const std::size_t tori = cfg.two_tori() ? 2 : 1;
    if (ic.is_array()) {
      if (ic.size() != tori) {
        throw ConfigError("ic", "config key 'ic' must list " + std::to_string(tori) + " torus object(s)");
      }
      for (std::size_t i = 0; i < tori; ++i) {
        append_torus_ic(ic[i], "ic[" + std::to_string(i) + "]", cfg.torus.n, state);
      }
    } else {
      if (tori != 1) throw ConfigError("ic", "config key 'ic' must be an array of two torus objects");
      append_torus_ic(ic, "ic", cfg.torus.n, state);
    }
    cfg.ic = std::move(state);
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_run_config(doc);
}

json to_json(const RunConfig& cfg) {
  json doc = {{"n", cfg.torus.n},
              {"a", cfg.torus.neuron.a},
              {"b", cfg.torus.neuron.b},
              {"c", cfg.torus.neuron.c},
              {"gamma", cfg.torus.gamma},
              {"delta", cfg.torus.delta},
              {"dt", cfg.settings.dt},
              {"t_end", cfg.settings.t_end},
              {"transient_discard", cfg.settings.transient_discard},
              {"record_stride", cfg.settings.record_stride}};
  if (cfg.epsilon) doc["epsilon"] = *cfg.epsilon;
  return doc;
}

}  // namespace torusfhn
