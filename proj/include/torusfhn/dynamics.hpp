#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "torusfhn/model.hpp"

namespace torusfhn {

struct IntegratorSettings {
  double dt = 0.01;
  double t_end = 400.0;
  int record_stride = 1;
  double transient_discard = 200.0;

  double sample_interval() const { return dt * record_stride; }
};

void validate(const IntegratorSettings& settings);

using VectorField = std::function<void(std::span<const double>, std::span<double>)>;
using SystemConfig = std::variant<std::monostate, TorusConfig, TwoToriConfig>;

/// Sampled solution; row i is the state at times[i].
struct Trajectory {
  std::vector<double> times;
  std::vector<double> data;
  std::size_t dim = 0;
  IntegratorSettings settings;
  SystemConfig config;

  std::size_t size() const { return times.size(); }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * dim, dim}; }
  std::vector<double> series(std::size_t component) const;
  /// Sub-trajectory of torus 0 or 1 of a two-tori run, carrying its TorusConfig.
  Trajectory torus(int which) const;
};

/// Magnitude above which integration is considered to have escaped.
inline constexpr double kDivergenceBound = 1e6;

/// Classical fixed-step RK4. Records t = 0 and every record_stride-th step after it.
Trajectory integrate(const VectorField& rhs, const NetworkState& ic, const IntegratorSettings& settings);

Trajectory simulate(const TorusConfig& cfg, const NetworkState& ic, const IntegratorSettings& settings);
Trajectory simulate(const TwoToriConfig& cfg, const NetworkState& ic, const IntegratorSettings& settings);

/// 3 x 3 initial conditions listed with the low/high coupling runs.
NetworkState fig2_initial_conditions();

/// Row-major tiling of the 3 x 3 initial values over an n x n torus.
NetworkState tiled_initial_conditions(int n);

/// Torus with every neuron at the mean of the 3 x 3 initial values.
NetworkState uniform_initial_conditions(int n);

/// Two 11 x 11 tori: tiled values with the explicitly listed neurons overridden
/// (torus #1 row 0, columns 0..3; torus #2 row 10, columns 7..10).
NetworkState listed_initial_conditions_11();

}  // namespace torusfhn
