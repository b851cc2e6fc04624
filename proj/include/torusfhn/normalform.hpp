#pragma once

#include <array>

#include "torusfhn/model.hpp"

namespace torusfhn {

/// Polynomial in two variables up to total degree 3; coeff[i][j] multiplies x^i y^j.
struct Poly2D {
  std::array<std::array<double, 4>, 4> coeff{};

  double operator()(double x, double y) const;
  /// d^(i+j) / dx^i dy^j at the origin.
  double partial(int i, int j) const;
};

struct NormalFormTransform {
  double varphi;
  Poly2D f;
  Poly2D g;
};

enum class HopfType { Supercritical, Subcritical, Degenerate };

struct NormalFormData {
  double varphi;
  double s_star_times_16;
  HopfType classification;
};

/// Puts the neuron at a = c into x' = -varphi y + f, y' = varphi x + g using
/// x~ = (y - a x)/sqrt(b - a^2), y~ = x.
NormalFormTransform normal_form_transform(const NeuronParams& p);

/// 16 s* = f_xxx + f_xyy + g_xxy + g_yyy
///       + [f_xy (f_xx + f_yy) - g_xy (g_xx + g_yy) - f_xx g_xx + f_yy g_yy] / varphi
double sixteen_s_star(const Poly2D& f, const Poly2D& g, double varphi);

NormalFormData first_lyapunov_sign(const NeuronParams& p);

const char* to_string(HopfType t);

}  // namespace torusfhn
