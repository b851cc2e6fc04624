#include "torusfhn/normalform.hpp"

#include <algorithm>
#include <cmath>

#include "torusfhn/errors.hpp"

namespace torusfhn {

double Poly2D::operator()(double x, double y) const {
  double sum = 0.0;
  double xi = 1.0;
  for (int i = 0; i < 4; ++i) {
    double yj = 1.0;
    for (int j = 0; i + j < 4; ++j) {
      sum += coeff[i][j] * xi * yj;
      yj *= y;
    }
    xi *= x;
  }
  return sum;
}

double Poly2D::partial(int i, int j) const {
  if (i < 0 || j < 0 || i + j > 3) return 0.0;
  static constexpr double factorial[4] = {1.0, 1.0, 2.0, 6.0};
  return factorial[i] * factorial[j] * coeff[i][j];
}

NormalFormTransform normal_form_transform(const NeuronParams& p) {
  const double tol = 1e-12 * std::max(1.0, std::abs(p.a));
  if (std::abs(p.c - p.a) > tol) {
    throw NotAtHopfError("not at Hopf point: the normal form requires c = a (Hopf locus a = c < b)");
  }
  const double omega_sq = p.b - p.a * p.a;
  if (!(omega_sq > 0.0)) throw TransformUndefinedError("transform undefined: requires b > a^2");
  const double omega = std::sqrt(omega_sq);

  NormalFormTransform t{-omega, {}, {}};
  t.f.coeff[0][3] = p.a / omega;  // (a / sqrt(b - a^2)) y~^3
  t.g.coeff[0][3] = -1.0;         // -y~^3
  return t;
}

double sixteen_s_star(const Poly2D& f, const Poly2D& g, double varphi) {
  const double fxx = f.partial(2, 0), fyy = f.partial(0, 2), fxy = f.partial(1, 1);
  const double gxx = g.partial(2, 0), gyy = g.partial(0, 2), gxy = g.partial(1, 1);
  const double third = f.partial(3, 0) + f.partial(1, 2) + g.partial(2, 1) + g.partial(0, 3);
  const double quadratic = fxy * (fxx + fyy) - gxy * (gxx + gyy) - fxx * gxx + fyy * gyy;
  return third + quadratic / varphi;
}

NormalFormData first_lyapunov_sign(const NeuronParams& p) {
  const auto t = normal_form_transform(p);
  const double s16 = sixteen_s_star(t.f, t.g, t.varphi);
  HopfType type = HopfType::Degenerate;
  if (s16 < 0.0) type = HopfType::Supercritical;
  if (s16 > 0.0) type = HopfType::Subcritical;
  return {t.varphi, s16, type};
}

const char* to_string(HopfType t) {
  switch (t) {
    case HopfType::Supercritical: return "supercritical";
    case HopfType::Subcritical: return "subcritical";
    case HopfType::Degenerate: return "degenerate";
  }
  return "?";
}

}  // namespace torusfhn
