#include "torusfhn/model.hpp"

#include <cmath>
#include <string>

#include "torusfhn/errors.hpp"

namespace torusfhn {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InvalidArgumentError(std::string(name) + " must be finite");
}

void check_dim(std::span<const double> s, std::span<double> out, std::size_t expected) {
  if (s.size() != expected || out.size() != expected) {
    throw DimensionError("state has length " + std::to_string(s.size()) + ", expected " +
                         std::to_string(expected));
  }
}

}  // namespace

void validate(const TorusConfig& cfg) {
  if (cfg.n < 1) throw InvalidArgumentError("lattice size n must be >= 1");
  require_finite(cfg.neuron.a, "a");
  require_finite(cfg.neuron.b, "b");
  require_finite(cfg.neuron.c, "c");
  require_finite(cfg.gamma, "gamma");
  require_finite(cfg.delta, "delta");
}

void validate(const TwoToriConfig& cfg) {
  validate(cfg.torus);
  require_finite(cfg.epsilon, "epsilon");
}

std::vector<std::string> diagnostics(const TorusConfig& cfg) {
  std::vector<std::string> notes;
  const auto& p = cfg.neuron;
  if (!(p.a > 0.0 && p.a < 1.0)) notes.emplace_back("a is outside (0, 1)");
  if (!(p.b > 0.0)) notes.emplace_back("b is not positive");
  if (!(p.c > 0.0)) notes.emplace_back("c is not positive");
  if (!(p.b > p.a)) notes.emplace_back("b does not exceed a");
  if (cfg.n % 2 == 0) {
    notes.emplace_back(
        "N is even: Hopf bifurcation to discrete rotating waves may require next-nearest-neighbour "
        "coupling, which this model does not include");
  }
  return notes;
}

NeuronDerivative neuron_rhs(double x, double y, const NeuronParams& p) {
  return {p.a * x - x * x * x - y, p.b * x - p.c * y};
}

void torus_rhs(std::span<const double> s, const TorusConfig& cfg, std::span<double> out) {
  const int n = cfg.n;
  check_dim(s, out, torus_dim(n));
  for (int alpha = 0; alpha < n; ++alpha) {
    const int alpha_next = (alpha + 1) % n;
    for (int beta = 0; beta < n; ++beta) {
      const int beta_next = (beta + 1) % n;
      const double x = s[x_index(n, alpha, beta)];
      const double y = s[y_index(n, alpha, beta)];
      const auto d = neuron_rhs(x, y, cfg.neuron);
      out[x_index(n, alpha, beta)] = d.dx + cfg.gamma * coupling_kappa(s[x_index(n, alpha_next, beta)], x) +
                                     cfg.delta * coupling_mu(s[x_index(n, alpha, beta_next)], x);
      out[y_index(n, alpha, beta)] = d.dy;
    }
  }
}

NetworkState torus_rhs(std::span<const double> s, const TorusConfig& cfg) {
  NetworkState out(s.size());
  torus_rhs(s, cfg, out);
  return out;
}

void two_tori_rhs(std::span<const double> s, const TwoToriConfig& cfg, std::span<double> out) {
  const int n = cfg.torus.n;
  const std::size_t half = torus_dim(n);
  check_dim(s, out, 2 * half);
  const auto s1 = s.first(half);
  const auto s2 = s.last(half);
  const auto o1 = out.first(half);
  const auto o2 = out.last(half);
  torus_rhs(s1, cfg.torus, o1);
  torus_rhs(s2, cfg.torus, o2);

  double sum1 = 0.0;
  double sum2 = 0.0;
  for (std::size_t i = 0; i < half; i += 2) {
    sum1 += s1[i];
    sum2 += s2[i];
  }
  const double count = static_cast<double>(n) * n;
  const double drive1 = cfg.epsilon * (sum2 / count);
  const double drive2 = cfg.epsilon * (sum1 / count);
  for (std::size_t i = 0; i < half; i += 2) {
    o1[i] += drive1;
    o2[i] += drive2;
  }
}

NetworkState two_tori_rhs(std::span<const double> s, const TwoToriConfig& cfg) {
  NetworkState out(s.size());
  two_tori_rhs(s, cfg, out);
  return out;
}

NetworkState apply_generator(GroupGenerator g, std::span<const double> s, int n) {
  if (n < 1 || s.size() != torus_dim(n)) {
    throw DimensionError("apply_generator: state length does not match a torus of side " + std::to_string(n));
  }
  NetworkState out(s.size());
  if (g == GroupGenerator::VarpiNegation) {
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = -s[i];
    return out;
  }
  for (int alpha = 0; alpha < n; ++alpha) {
    for (int beta = 0; beta < n; ++beta) {
      // data at (alpha, beta) moves one step back along the shifted direction
      const int to_alpha = g == GroupGenerator::SigmaShift ? (alpha + n - 1) % n : alpha;
      const int to_beta = g == GroupGenerator::RhoShift ? (beta + n - 1) % n : beta;
      out[x_index(n, to_alpha, to_beta)] = s[x_index(n, alpha, beta)];
      out[y_index(n, to_alpha, to_beta)] = s[y_index(n, alpha, beta)];
    }
  }
  return out;
}

const char* to_string(GroupGenerator g) {
  switch (g) {
    case GroupGenerator::SigmaShift: return "sigma";
    case GroupGenerator::RhoShift: return "rho";
    case GroupGenerator::VarpiNegation: return "varpi";
  }
  return "?";
}

}  // namespace torusfhn
