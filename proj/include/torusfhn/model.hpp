#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace torusfhn {

/// Modified FitzHugh-Nagumo neuron: x' = a x - x^3 - y, y' = b x - c y.
struct NeuronParams {
  double a = 0.01;
  double b = 0.9;
  double c = 0.9;
};

/// N x N torus of identical neurons with unidirectional forward coupling.
struct TorusConfig {
  int n = 3;
  NeuronParams neuron;
  double gamma = 0.0;  // alpha-direction coupling
  double delta = 0.0;  // beta-direction coupling
};

/// Two identical tori joined by mean-field coupling of strength epsilon.
struct TwoToriConfig {
  TorusConfig torus;
  double epsilon = 0.0;
};

/// Flat state vector. Neuron (alpha, beta) stores x at 2*(alpha*N + beta) and y
/// right after it; a two-tori state appends torus #2 after the first 2N^2 entries.
using NetworkState = std::vector<double>;

struct NeuronDerivative {
  double dx;
  double dy;
};

enum class GroupGenerator { SigmaShift, RhoShift, VarpiNegation };

constexpr std::size_t x_index(int n, int alpha, int beta) {
  return 2 * (static_cast<std::size_t>(alpha) * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(beta));
}
constexpr std::size_t y_index(int n, int alpha, int beta) { return x_index(n, alpha, beta) + 1; }
constexpr std::size_t torus_dim(int n) { return 2 * static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }

/// Throws InvalidArgumentError on non-finite values or n < 1.
void validate(const TorusConfig& cfg);
void validate(const TwoToriConfig& cfg);

/// Human-readable notes for parameters outside 0<a<1, b>0, c>0, b>a and for
/// even N (rotating-wave bifurcation may need next-nearest-neighbour coupling).
/// Nothing is rejected.
std::vector<std::string> diagnostics(const TorusConfig& cfg);

NeuronDerivative neuron_rhs(double x, double y, const NeuronParams& p);

/// kappa and mu share the form -u_next + u_self.
constexpr double coupling_kappa(double u_next, double u_self) { return -u_next + u_self; }
constexpr double coupling_mu(double u_next, double u_self) { return -u_next + u_self; }

void torus_rhs(std::span<const double> s, const TorusConfig& cfg, std::span<double> out);
NetworkState torus_rhs(std::span<const double> s, const TorusConfig& cfg);

/// Each x equation additionally receives epsilon times the mean x of the other torus.
void two_tori_rhs(std::span<const double> s, const TwoToriConfig& cfg, std::span<double> out);
NetworkState two_tori_rhs(std::span<const double> s, const TwoToriConfig& cfg);

/// sigma moves the data of neuron (alpha, beta) to (alpha-1, beta); rho does the
/// same along beta; varpi negates every entry.
NetworkState apply_generator(GroupGenerator g, std::span<const double> s, int n);

const char* to_string(GroupGenerator g);

}  // namespace torusfhn
