#include "equi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace equi {

namespace {

constexpr double kTailWarnThreshold = 1e-10;

std::vector<double> spectral_derivative(const FourierSeries& f, int n) {
  return inverse_samples(differentiate(f), n);
}

}  // namespace

CurveGeometry compute_geometry(const PlanarCurveSamples& curve) {
  const int n = curve.grid.n;
  if (curve.x.size() != static_cast<size_t>(n) || curve.y.size() != static_cast<size_t>(n))
    fail(errc::invalid_grid, "curve sample count does not match grid");

  // Spectral operations act on the periodic parts; for horizontally periodic
  // curves the unit slope of x is tracked explicitly.
  const bool hp = curve.kind == CurveKind::horizontally_periodic;
  std::vector<double> px = curve.x;
  if (hp)
    for (int j = 0; j < n; ++j) px[static_cast<size_t>(j)] -= curve.grid.node(j);

  const FourierSeries cx = forward_coeffs(px);
  const FourierSeries cy = forward_coeffs(curve.y);

  CurveGeometry g;
  g.tail_ratio = std::max(cx.tail_ratio(), cy.tail_ratio());
  g.resolution_warning = g.tail_ratio > kTailWarnThreshold;

  std::vector<double> x_a = spectral_derivative(cx, n);
  if (hp)
    for (double& v : x_a) v += 1.0;
  const std::vector<double> y_a = spectral_derivative(cy, n);

  g.s_alpha.resize(static_cast<size_t>(n));
  double min_sa = std::numeric_limits<double>::max(), max_sa = 0.0;
  for (int j = 0; j < n; ++j) {
    const size_t i = static_cast<size_t>(j);
    g.s_alpha[i] = std::hypot(x_a[i], y_a[i]);
    min_sa = std::min(min_sa, g.s_alpha[i]);
    max_sa = std::max(max_sa, g.s_alpha[i]);
  }
  if (!(min_sa > 1e-14 * max_sa))
    fail(errc::degenerate_curve, "local spacing vanishes; curve is not immersed");

  g.s_field = antiderivative(forward_coeffs(g.s_alpha));
  g.s_of_alpha = g.s_field.sample(n);
  g.L = two_pi * g.s_field.slope.mean();
  for (int j = 1; j < n; ++j)
    if (!(g.s_of_alpha[static_cast<size_t>(j)] > g.s_of_alpha[static_cast<size_t>(j - 1)]))
      fail(errc::monotonicity_loss, "arclength map is not strictly increasing");

  g.x_s.resize(static_cast<size_t>(n));
  g.y_s.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const size_t i = static_cast<size_t>(j);
    g.x_s[i] = x_a[i] / g.s_alpha[i];
    g.y_s[i] = y_a[i] / g.s_alpha[i];
  }

  // kappa = y_ss x_s - y_s x_ss with d/ds = s_alpha^{-1} d/dalpha.
  const std::vector<double> dxs = spectral_derivative(forward_coeffs(g.x_s), n);
  const std::vector<double> dys = spectral_derivative(forward_coeffs(g.y_s), n);
  g.kappa.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const size_t i = static_cast<size_t>(j);
    const double x_ss = dxs[i] / g.s_alpha[i];
    const double y_ss = dys[i] / g.s_alpha[i];
    g.kappa[i] = y_ss * g.x_s[i] - g.y_s[i] * x_ss;
  }

  // theta by spectral integration of theta_alpha = s_alpha kappa, anchored at
  // theta(0) = atan2(y_alpha(0), x_alpha(0)).
  std::vector<double> theta_a(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    theta_a[static_cast<size_t>(j)] = g.s_alpha[static_cast<size_t>(j)] * g.kappa[static_cast<size_t>(j)];
  g.theta = antiderivative(forward_coeffs(theta_a));
  g.theta0 = std::atan2(y_a[0], x_a[0]);
  g.theta.periodic.at(0) += g.theta0;
  g.turning = g.theta.slope.mean();
  return g;
}

UnitVectors unit_vectors(const CurveGeometry& geometry) {
  UnitVectors v;
  v.tx = geometry.x_s;
  v.ty = geometry.y_s;
  v.nx.resize(geometry.x_s.size());
  v.ny.resize(geometry.x_s.size());
  for (size_t i = 0; i < geometry.x_s.size(); ++i) {
    v.nx[i] = -geometry.y_s[i];
    v.ny[i] = geometry.x_s[i];
  }
  return v;
}

}  // namespace equi
