#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "torusfhn/model.hpp"

namespace torusfhn {

using Complex = std::complex<double>;

/// Discrete wavenumber pair; r pairs with the alpha ring, s with the beta ring.
struct ModeIndex {
  int r = 0;
  int s = 0;
  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

enum class Branch { First = 1, Second = 2 };

/// a1 + i b1 is the discriminant [c + a + gamma(1-zeta_r) + delta(1-zeta_s)]^2 - 4b;
/// a2 + i b2 is its principal square root.
struct DecompositionTerms {
  double a1;
  double b1;
  double a2;
  double b2;
};

struct RealImagParts {
  double re1;
  double re2;
  double im1;
  double im2;
};

struct ModeSpectrum {
  ModeIndex mode;
  Complex lambda1;
  Complex lambda2;
  DecompositionTerms terms;
  RealImagParts parts;
};

struct CouplingShift {
  double a3_1;
  double a3_2;
};

struct StabilityVerdict {
  bool stable;
  double max_re;
  std::vector<ModeIndex> critical_modes;
};

enum class Parameter { Gamma, Delta, A, C };

struct HopfBoundary {
  double value;     // critical parameter value
  double residual;  // 2 Re(lambda_1) at the returned value
  double imag;      // Im(lambda_1) at the returned value
};

/// cos and sin of 2*pi*k/n, exact at multiples of pi/2 and odd in k.
std::pair<double, double> unit_root(long k, long n);

void validate_mode(const ModeIndex& mode, int n);

Eigen::Matrix2cd mode_matrix(const ModeIndex& mode, const TorusConfig& cfg);

std::pair<Complex, Complex> closed_form_eigenvalues(const ModeIndex& mode, const TorusConfig& cfg);
std::pair<Complex, Complex> uncoupled_eigenvalues(const NeuronParams& p);

DecompositionTerms decomposition_terms(const ModeIndex& mode, const TorusConfig& cfg);
RealImagParts real_imag_parts(const ModeIndex& mode, const TorusConfig& cfg);
ModeSpectrum mode_spectrum(const ModeIndex& mode, const TorusConfig& cfg);

/// All N^2 modes, ordered by (r, s).
std::vector<ModeSpectrum> full_spectrum(const TorusConfig& cfg);

/// Real-part shift of each branch relative to the uncoupled neuron:
/// re_{1,2} = Re(lambda_{1,2} uncoupled) + a3_{1,2}.
CouplingShift coupling_shift(const ModeIndex& mode, const TorusConfig& cfg);

/// Jacobian of torus_rhs at the origin, 2N^2 x 2N^2.
Eigen::MatrixXd assemble_linearization(const TorusConfig& cfg);

/// Eigenvector of the full linearization for the given mode. The outer (alpha)
/// ring is weighted by exp(2 pi i k alpha / N) and the inner (beta) ring by
/// zeta_s^beta; it is an eigenvector exactly when k == mode.r.
Eigen::VectorXcd mode_eigenvector(const ModeIndex& mode, Branch branch, int k, const TorusConfig& cfg);
Eigen::VectorXcd mode_eigenvector(const ModeIndex& mode, Branch branch, const TorusConfig& cfg);

/// Twice the real part of the selected branch. Rejects mode (0,0).
double hopf_residual(const ModeIndex& mode, const TorusConfig& cfg, Branch branch);

/// Bisection on 2 Re(lambda_1) while varying one parameter over [lo, hi].
HopfBoundary find_hopf_boundary(const ModeIndex& mode, const TorusConfig& cfg, Parameter vary, double lo,
                                double hi);

StabilityVerdict origin_stability(const TorusConfig& cfg);
/// Origin of the two-tori system; only mode (0,0) feels epsilon.
StabilityVerdict origin_stability(const TwoToriConfig& cfg);

/// Jacobian of two_tori_rhs at the origin, 4N^2 x 4N^2.
Eigen::MatrixXd assemble_linearization(const TwoToriConfig& cfg);

/// Dense eigenvalues of a real matrix (Eigen's real Schur based solver).
std::vector<Complex> dense_eigenvalues(const Eigen::MatrixXd& m);

/// Dense eigenvalues of assemble_linearization(cfg); limited to N <= 8.
std::vector<Complex> numeric_spectrum(const TorusConfig& cfg);

/// Minimum-total-distance assignment; result[i] is the index in `to` matched with from[i].
std::vector<int> match_eigenvalues(const std::vector<Complex>& from, const std::vector<Complex>& to);

TorusConfig with_parameter(TorusConfig cfg, Parameter p, double value);
const char* to_string(Parameter p);

}  // namespace torusfhn
