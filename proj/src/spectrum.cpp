#include "torusfhn/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "torusfhn/errors.hpp"

namespace torusfhn {

namespace {

/// Principal square root with a signed-zero imaginary part read as +0, so that
/// a negative real argument always maps to the upper half-plane.
Complex principal_sqrt(Complex z) {
  if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
  return std::sqrt(z);
}

Complex root(long k, long n) {
  const auto [c, s] = unit_root(k, n);
  return {c, s};
}

/// gamma (1 - zeta_r) + delta (1 - zeta_s)
Complex coupling_term(const ModeIndex& mode, const TorusConfig& cfg) {
  const auto [cr, sr] = unit_root(mode.r, cfg.n);
  const auto [cs, ss] = unit_root(mode.s, cfg.n);
  return {cfg.gamma * (1.0 - cr) + cfg.delta * (1.0 - cs), -cfg.gamma * sr - cfg.delta * ss};
}

}  // namespace

std::pair<double, double> unit_root(long k, long n) {
  if (n < 1) throw InvalidArgumentError("unit_root: n must be positive");
  k %= n;
  if (k < 0) k += n;
  if (k == 0) return {1.0, 0.0};
  if (2 * k == n) return {-1.0, 0.0};
  if (4 * k == n) return {0.0, 1.0};
  if (4 * k == 3 * n) return {0.0, -1.0};
  if (2 * k > n) {
    const auto [c, s] = unit_root(n - k, n);
    return {c, -s};
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

void validate_mode(const ModeIndex& mode, int n) {
  if (mode.r < 0 || mode.r >= n || mode.s < 0 || mode.s >= n) {
    throw InvalidModeError("mode (" + std::to_string(mode.r) + "," + std::to_string(mode.s) +
                           ") outside 0..N-1 for N=" + std::to_string(n));
  }
}

Eigen::Matrix2cd mode_matrix(const ModeIndex& mode, const TorusConfig& cfg) {
  validate_mode(mode, cfg.n);
  const auto& p = cfg.neuron;
  const double d = p.a + cfg.gamma + cfg.delta;
  Eigen::Matrix2cd g;
  g(0, 0) = d - cfg.gamma * root(mode.r, cfg.n) - cfg.delta * root(mode.s, cfg.n);
  g(0, 1) = -1.0;
  g(1, 0) = p.b;
  g(1, 1) = -p.c;
  return g;
}

std::pair<Complex, Complex> closed_form_eigenvalues(const ModeIndex& mode, const TorusConfig& cfg) {
  validate_mode(mode, cfg.n);
  const auto& p = cfg.neuron;
  const Complex u = coupling_term(mode, cfg);
  const Complex centre = 0.5 * (Complex(-p.c + p.a) + u);
  const Complex w = Complex(p.c + p.a) + u;
  const Complex half_root = 0.5 * principal_sqrt(w * w - 4.0 * p.b);
  return {centre + half_root, centre - half_root};
}

std::pair<Complex, Complex> uncoupled_eigenvalues(const NeuronParams& p) {
  const double sum = p.c + p.a;
  const Complex root_term = principal_sqrt(Complex(sum * sum - 4.0 * p.b));
  return {(Complex(-p.c + p.a) + root_term) / 2.0, (Complex(-p.c + p.a) - root_term) / 2.0};
}

DecompositionTerms decomposition_terms(const ModeIndex& mode, const TorusConfig& cfg) {
  validate_mode(mode, cfg.n);
  const long n = cfg.n;
  const double ac = cfg.neuron.a + cfg.neuron.c;
  const double g = cfg.gamma;
  const double dl = cfg.delta;
  const auto [cr, sr] = unit_root(mode.r, n);
  const auto [cs, ss] = unit_root(mode.s, n);
  const auto [c2r, s2r] = unit_root(2L * mode.r, n);
  const auto [c2s, s2s] = unit_root(2L * mode.s, n);
  const auto [crs, srs] = unit_root(static_cast<long>(mode.r) + mode.s, n);

  const double a1 = ac * ac + 2.0 * ac * (g - g * cr + dl - dl * cs) + g * g * (1.0 - 2.0 * cr + c2r) +
                    dl * dl * (1.0 - 2.0 * cs + c2s) + 2.0 * g * dl * (1.0 - cr - cs + crs) - 4.0 * cfg.neuron.b;
  const double b1 = 2.0 * ac * (-g * sr - dl * ss) + g * g * (-2.0 * sr + s2r) + dl * dl * (-2.0 * ss + s2s) +
                    2.0 * g * dl * (-sr - ss + srs);

  // a2 = sqrt((|z| + a1)/2), b2 = sgn(b1) sqrt((|z| - a1)/2), sgn(0) = +1.
  // The smaller of the two is recovered from a2 * b2 = b1 / 2 to avoid cancellation.
  const double modulus = std::hypot(a1, b1);
  const double sign = b1 < 0.0 ? -1.0 : 1.0;
  double a2 = 0.0;
  double b2 = 0.0;
  if (a1 >= 0.0) {
    a2 = std::sqrt(0.5 * (modulus + a1));
    b2 = a2 > 0.0 ? b1 / (2.0 * a2) : 0.0;
  } else {
    b2 = sign * std::sqrt(0.5 * (modulus - a1));
    a2 = std::abs(b1) / (2.0 * std::abs(b2));
  }
  return {a1, b1, a2, b2};
}

RealImagParts real_imag_parts(const ModeIndex& mode, const TorusConfig& cfg) {
  const auto t = decomposition_terms(mode, cfg);
  const auto [cr, sr] = unit_root(mode.r, cfg.n);
  const auto [cs, ss] = unit_root(mode.s, cfg.n);
  const auto& p = cfg.neuron;
  const double base_re = -p.c + p.a + cfg.gamma * (1.0 - cr) + cfg.delta * (1.0 - cs);
  const double base_im = -cfg.gamma * sr - cfg.delta * ss;
  return {0.5 * (base_re + t.a2), 0.5 * (base_re - t.a2), 0.5 * (base_im + t.b2), 0.5 * (base_im - t.b2)};
}

ModeSpectrum mode_spectrum(const ModeIndex& mode, const TorusConfig& cfg) {
  const auto [l1, l2] = closed_form_eigenvalues(mode, cfg);
  return {mode, l1, l2, decomposition_terms(mode, cfg), real_imag_parts(mode, cfg)};
}

std::vector<ModeSpectrum> full_spectrum(const TorusConfig& cfg) {
  validate(cfg);
  std::vector<ModeSpectrum> out;
  out.reserve(static_cast<std::size_t>(cfg.n) * cfg.n);
  for (int r = 0; r < cfg.n; ++r) {
    for (int s = 0; s < cfg.n; ++s) out.push_back(mode_spectrum({r, s}, cfg));
  }
  return out;
}

CouplingShift coupling_shift(const ModeIndex& mode, const TorusConfig& cfg) {
  const auto parts = real_imag_parts(mode, cfg);
  const auto [u1, u2] = uncoupled_eigenvalues(cfg.neuron);
  return {parts.re1 - u1.real(), parts.re2 - u2.real()};
}

Eigen::MatrixXd assemble_linearization(const TorusConfig& cfg) {
  validate(cfg);
  const int n = cfg.n;
  const auto dim = static_cast<Eigen::Index>(torus_dim(n));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  const auto& p = cfg.neuron;
  for (int alpha = 0; alpha < n; ++alpha) {
    for (int beta = 0; beta < n; ++beta) {
      const auto xi = static_cast<Eigen::Index>(x_index(n, alpha, beta));
      const auto yi = static_cast<Eigen::Index>(y_index(n, alpha, beta));
      m(xi, xi) += p.a + cfg.gamma + cfg.delta;
      m(xi, yi) += -1.0;
      m(xi, static_cast<Eigen::Index>(x_index(n, (alpha + 1) % n, beta))) += -cfg.gamma;
      m(xi, static_cast<Eigen::Index>(x_index(n, alpha, (beta + 1) % n))) += -cfg.delta;
      m(yi, xi) += p.b;
      m(yi, yi) += -p.c;
    }
  }
  return m;
}

Eigen::VectorXcd mode_eigenvector(const ModeIndex& mode, Branch branch, int k, const TorusConfig& cfg) {
  validate_mode(mode, cfg.n);
  const int n = cfg.n;
  if (k < 0 || k >= n) throw InvalidModeError("outer-ring exponent k must lie in 0..N-1");
  const auto [l1, l2] = closed_form_eigenvalues(mode, cfg);
  const Complex lambda = branch == Branch::First ? l1 : l2;
  const Complex g11 = Complex(cfg.neuron.a) + coupling_term(mode, cfg);
  const Complex v0 = 1.0;
  const Complex v1 = g11 - lambda;

  Eigen::VectorXcd nu(static_cast<Eigen::Index>(torus_dim(n)));
  const double scale = 1.0 / n;
  for (int alpha = 0; alpha < n; ++alpha) {
    const Complex outer = root(static_cast<long>(k) * alpha, n);
    for (int beta = 0; beta < n; ++beta) {
      const Complex phase = scale * outer * root(static_cast<long>(mode.s) * beta, n);
      nu(static_cast<Eigen::Index>(x_index(n, alpha, beta))) = phase * v0;
      nu(static_cast<Eigen::Index>(y_index(n, alpha, beta))) = phase * v1;
    }
  }
  return nu;
}

Eigen::VectorXcd mode_eigenvector(const ModeIndex& mode, Branch branch, const TorusConfig& cfg) {
  return mode_eigenvector(mode, branch, mode.r, cfg);
}

double hopf_residual(const ModeIndex& mode, const TorusConfig& cfg, Branch branch) {
  validate_mode(mode, cfg.n);
  if (mode.r == 0 && mode.s == 0) {
    throw InvalidModeError("mode (0,0) has its own Hopf condition c = a with c^2 < b");
  }
  const auto parts = real_imag_parts(mode, cfg);
  return branch == Branch::First ? 2.0 * parts.re1 : 2.0 * parts.re2;
}

TorusConfig with_parameter(TorusConfig cfg, Parameter p, double value) {
  switch (p) {
    case Parameter::Gamma: cfg.gamma = value; break;
    case Parameter::Delta: cfg.delta = value; break;
    case Parameter::A: cfg.neuron.a = value; break;
    case Parameter::C: cfg.neuron.c = value; break;
  }
  return cfg;
}

const char* to_string(Parameter p) {
  switch (p) {
    case Parameter::Gamma: return "gamma";
    case Parameter::Delta: return "delta";
    case Parameter::A: return "a";
    case Parameter::C: return "c";
  }
  return "?";
}

HopfBoundary find_hopf_boundary(const ModeIndex& mode, const TorusConfig& cfg, Parameter vary, double lo,
                                double hi) {
  validate(cfg);
  validate_mode(mode, cfg.n);
  if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi)) {
    throw InvalidArgumentError("bracket must satisfy lo < hi");
  }
  auto residual = [&](double v) { return 2.0 * real_imag_parts(mode, with_parameter(cfg, vary, v)).re1; };

  constexpr double kResidualTol = 1e-10;
  constexpr double kWidthTol = 1e-12;
  double f_lo = residual(lo);
  const double f_hi = residual(hi);
  double root_value = 0.0;
  if (f_lo == 0.0) {
    root_value = lo;
  } else if (f_hi == 0.0) {
    root_value = hi;
  } else if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw NoBoundaryError("no boundary in range: residual has the same sign at both ends of [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
  } else {
    double a = lo;
    double b = hi;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (a + b);
      const double f_mid = residual(mid);
      root_value = mid;
      if (std::abs(f_mid) < kResidualTol || (b - a) < kWidthTol) break;
      if ((f_mid < 0.0) == (f_lo < 0.0)) {
        a = mid;
        f_lo = f_mid;
      } else {
        b = mid;
      }
    }
  }

  const auto at_root = with_parameter(cfg, vary, root_value);
  const auto parts = real_imag_parts(mode, at_root);
  const double scale = 1.0 + std::abs(at_root.neuron.b) + std::abs(at_root.gamma) + std::abs(at_root.delta);
  if (std::abs(parts.im1) <= 1e-9 * scale) {
    throw DegenerateCrossingError("degenerate crossing: imaginary part vanishes at the root");
  }
  return {root_value, 2.0 * parts.re1, parts.im1};
}

StabilityVerdict origin_stability(const TorusConfig& cfg) {
  const auto spectrum = full_spectrum(cfg);
  double max_re = -std::numeric_limits<double>::infinity();
  for (const auto& m : spectrum) max_re = std::max({max_re, m.parts.re1, m.parts.re2});
  const double tol = 1e-12 * std::max(1.0, std::abs(max_re));
  StabilityVerdict verdict{max_re < 0.0, max_re, {}};
  for (const auto& m : spectrum) {
    if (std::max(m.parts.re1, m.parts.re2) >= max_re - tol) verdict.critical_modes.push_back(m.mode);
  }
  return verdict;
}

StabilityVerdict origin_stability(const TwoToriConfig& cfg) {
  validate(cfg);
  // Symmetric and antisymmetric combinations of the tori decouple; the mean
  // field only reaches mode (0,0), where it shifts a by +epsilon or -epsilon.
  double max_re = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<ModeIndex, double>> per_mode;
  for (const auto& m : full_spectrum(cfg.torus)) {
    double re = std::max(m.parts.re1, m.parts.re2);
    if (m.mode.r == 0 && m.mode.s == 0) {
      re = -std::numeric_limits<double>::infinity();
      for (double sign : {1.0, -1.0}) {
        NeuronParams shifted = cfg.torus.neuron;
        shifted.a += sign * cfg.epsilon;
        const auto [l1, l2] = uncoupled_eigenvalues(shifted);
        re = std::max({re, l1.real(), l2.real()});
      }
    }
    per_mode.emplace_back(m.mode, re);
    max_re = std::max(max_re, re);
  }
  const double tol = 1e-12 * std::max(1.0, std::abs(max_re));
  StabilityVerdict verdict{max_re < 0.0, max_re, {}};
  for (const auto& [mode, re] : per_mode) {
    if (re >= max_re - tol) verdict.critical_modes.push_back(mode);
  }
  return verdict;
}

Eigen::MatrixXd assemble_linearization(const TwoToriConfig& cfg) {
  const auto m = assemble_linearization(cfg.torus);
  const auto dim = m.rows();
  const double weight = cfg.epsilon / static_cast<double>(cfg.torus.n * cfg.torus.n);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * dim, 2 * dim);
  out.topLeftCorner(dim, dim) = m;
  out.bottomRightCorner(dim, dim) = m;
  for (Eigen::Index row = 0; row < dim; row += 2) {
    for (Eigen::Index col = 0; col < dim; col += 2) {
      out(row, dim + col) = weight;
      out(dim + row, col) = weight;
    }
  }
  return out;
}

std::vector<Complex> dense_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  if (solver.info() != Eigen::Success) throw Error("dense eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<Complex> numeric_spectrum(const TorusConfig& cfg) {
  if (cfg.n > 8) throw InvalidArgumentError("dense oracle is limited to N <= 8");
  return dense_eigenvalues(assemble_linearization(cfg));
}

std::vector<int> match_eigenvalues(const std::vector<Complex>& from, const std::vector<Complex>& to) {
  const std::size_t n = from.size();
  if (to.size() != n) throw DimensionError("match_eigenvalues: sets differ in size");
  // Hungarian algorithm with potentials, 1-based rows/columns.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = std::abs(from[i0 - 1] - to[j - 1]) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> result(n, -1);
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] != 0) result[p[j] - 1] = static_cast<int>(j - 1);
  }
  return result;
}

}  // namespace torusfhn
