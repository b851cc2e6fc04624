#include "torusfhn/dynamics.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "torusfhn/errors.hpp"

namespace torusfhn {

namespace {

constexpr std::array<double, 9> kListedX = {0.8462, 0.2026, 0.8381, 0.6813, 0.8318, 0.7095, 0.3046, 0.1934, 0.3028};
constexpr std::array<double, 9> kListedY = {0.5252, 0.6721, 0.0196, 0.3795, 0.5028, 0.4289, 0.1897, 0.6822, 0.5417};

}  // namespace

void validate(const IntegratorSettings& s) {
  if (!(s.dt > 0.0) || !std::isfinite(s.dt)) throw InvalidArgumentError("dt must be positive");
  if (!(s.t_end > 0.0) || !std::isfinite(s.t_end)) throw InvalidArgumentError("t_end must be positive");
  if (s.record_stride < 1) throw InvalidArgumentError("record_stride must be >= 1");
  if (!(s.transient_discard >= 0.0)) throw InvalidArgumentError("transient_discard must be >= 0");
  if (!(s.t_end > s.transient_discard)) throw InvalidArgumentError("t_end must exceed transient_discard");
}

std::vector<double> Trajectory::series(std::size_t component) const {
  if (component >= dim) throw DimensionError("component index out of range");
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = data[i * dim + component];
  return out;
}

Trajectory Trajectory::torus(int which) const {
  const auto* two = std::get_if<TwoToriConfig>(&config);
  if (two == nullptr) throw InvalidArgumentError("not a two-tori trajectory");
  if (which != 0 && which != 1) throw InvalidArgumentError("torus index must be 0 or 1");
  const std::size_t half = torus_dim(two->torus.n);
  Trajectory out;
  out.times = times;
  out.dim = half;
  out.settings = settings;
  out.config = two->torus;
  out.data.resize(size() * half);
  for (std::size_t i = 0; i < size(); ++i) {
    const auto src = row(i).subspan(static_cast<std::size_t>(which) * half, half);
    std::copy(src.begin(), src.end(), out.data.begin() + static_cast<std::ptrdiff_t>(i * half));
  }
  return out;
}

Trajectory integrate(const VectorField& rhs, const NetworkState& ic, const IntegratorSettings& settings) {
  validate(settings);
  const std::size_t dim = ic.size();
  for (double v : ic) {
    if (!std::isfinite(v)) throw InvalidArgumentError("initial condition must be finite");
  }
  const auto steps = static_cast<long>(std::llround(settings.t_end / settings.dt));
  const double dt = settings.dt;

  Trajectory traj;
  traj.dim = dim;
  traj.settings = settings;
  const auto samples = static_cast<std::size_t>(steps / settings.record_stride) + 1;
  traj.times.reserve(samples);
  traj.data.reserve(samples * dim);
  traj.times.push_back(0.0);
  traj.data.insert(traj.data.end(), ic.begin(), ic.end());

  std::vector<double> x = ic, tmp(dim), k1(dim), k2(dim), k3(dim), k4(dim);
  for (long step = 1; step <= steps; ++step) {
    rhs(x, k1);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    rhs(tmp, k3);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = x[i] + dt * k3[i];
    rhs(tmp, k4);
    const double t = static_cast<double>(step) * dt;
    for (std::size_t i = 0; i < dim; ++i) {
      x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!(std::abs(x[i]) <= kDivergenceBound)) {
        throw DivergenceError(t, "trajectory diverged at t=" + std::to_string(t));
      }
    }
    if (step % settings.record_stride == 0) {
      traj.times.push_back(t);
      traj.data.insert(traj.data.end(), x.begin(), x.end());
    }
  }
  return traj;
}

Trajectory simulate(const TorusConfig& cfg, const NetworkState& ic, const IntegratorSettings& settings) {
  validate(cfg);
  if (ic.size() != torus_dim(cfg.n)) throw DimensionError("initial condition does not match the torus size");
  auto traj = integrate([&cfg](std::span<const double> s, std::span<double> out) { torus_rhs(s, cfg, out); }, ic,
                        settings);
  traj.config = cfg;
  return traj;
}

Trajectory simulate(const TwoToriConfig& cfg, const NetworkState& ic, const IntegratorSettings& settings) {
  validate(cfg);
  if (ic.size() != 2 * torus_dim(cfg.torus.n)) {
    throw DimensionError("initial condition does not match the two-tori size");
  }
  auto traj = integrate(
      [&cfg](std::span<const double> s, std::span<double> out) { two_tori_rhs(s, cfg, out); }, ic, settings);
  traj.config = cfg;
  return traj;
}

NetworkState fig2_initial_conditions() { return tiled_initial_conditions(3); }

NetworkState tiled_initial_conditions(int n) {
  if (n < 1) throw InvalidArgumentError("n must be >= 1");
  NetworkState s(torus_dim(n));
  for (int alpha = 0; alpha < n; ++alpha) {
    for (int beta = 0; beta < n; ++beta) {
      const auto k = static_cast<std::size_t>(alpha * n + beta) % kListedX.size();
      s[x_index(n, alpha, beta)] = kListedX[k];
      s[y_index(n, alpha, beta)] = kListedY[k];
    }
  }
  return s;
}

NetworkState uniform_initial_conditions(int n) {
  if (n < 1) throw InvalidArgumentError("n must be >= 1");
  const double mx = std::accumulate(kListedX.begin(), kListedX.end(), 0.0) / kListedX.size();
  const double my = std::accumulate(kListedY.begin(), kListedY.end(), 0.0) / kListedY.size();
  NetworkState s(torus_dim(n));
  for (std::size_t i = 0; i < s.size(); i += 2) {
    s[i] = mx;
    s[i + 1] = my;
  }
  return s;
}

NetworkState listed_initial_conditions_11() {
  constexpr int n = 11;
  NetworkState t1 = tiled_initial_conditions(n);
  NetworkState t2 = tiled_initial_conditions(n);
  constexpr std::array<double, 4> x1 = {6.489, 9.3843, 6.9745, 3.3656};
  constexpr std::array<double, 4> y1 = {0.8862, 1.7536, 8.3197, 7.9935};
  constexpr std::array<double, 4> x2 = {0.5475, 9.7797, 2.3655, 3.8290};
  constexpr std::array<double, 4> y2 = {4.8460, 4.3027, 7.5896, 4.9924};
  for (int j = 0; j < 4; ++j) {
    t1[x_index(n, 0, j)] = x1[j];
    t1[y_index(n, 0, j)] = y1[j];
    t2[x_index(n, 10, 7 + j)] = x2[j];
    t2[y_index(n, 10, 7 + j)] = y2[j];
  }
  t1.insert(t1.end(), t2.begin(), t2.end());
  return t1;
}

}  // namespace torusfhn
