#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "torusfhn/dynamics.hpp"
#include "torusfhn/model.hpp"

namespace torusfhn {

inline constexpr int kConfigSchemaVersion = 1;

/// JSON run description. Presence of `epsilon` selects the two-tori system.
struct RunConfig {
  TorusConfig torus;
  std::optional<double> epsilon;
  IntegratorSettings settings;
  std::optional<NetworkState> ic;

  bool two_tori() const { return epsilon.has_value(); }
  TwoToriConfig two_tori_config() const { return {torus, epsilon.value_or(0.0)}; }
  std::size_t state_dim() const { return (two_tori() ? 2 : 1) * torus_dim(torus.n); }
  /// Explicit `ic` if given, otherwise the defaults described in the README.
  NetworkState initial_state() const;
};

/// Throws ConfigError naming the offending key.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

NetworkState default_initial_state(int n, bool two_tori);

nlohmann::json to_json(const RunConfig& cfg);

}  // namespace torusfhn
