#include "equi/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace equi {

namespace {

constexpr double kClosureTolerance = 1e-6;  // relative to L

}  // namespace

int default_upsampling(CurveKind kind, int n) {
  if (kind == CurveKind::closed) return 2 * n;
  return std::min(16 * n, 65536);
}

FourierSeries arclength_coeffs(std::span<const double> f_samples, const CurveGeometry& geometry,
                               int n_up, int k_max, double eps) {
  const int n = static_cast<int>(geometry.s_alpha.size());
  if (f_samples.size() != static_cast<size_t>(n))
    fail(errc::invalid_grid, "arclength_coeffs: sample count does not match geometry");
  if (n_up < n || n_up % 2 != 0)
    fail(errc::invalid_grid, "arclength_coeffs: upsampled grid must be even and >= n");
  if (k_max < 1 || 2 * k_max > n_up)
    fail(errc::undersampled_exponential,
         "arclength_coeffs: k_max exceeds the upsampled Nyquist band n_up/2");

  // Upsample the periodic integrand f s_alpha and the periodic part of s to
  // resolve the uniformly oscillating exponential factor.
  std::vector<double> weighted(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    weighted[static_cast<size_t>(j)] = f_samples[static_cast<size_t>(j)] * geometry.s_alpha[static_cast<size_t>(j)];
  const std::vector<double> w_up = inverse_samples(forward_coeffs(weighted), n_up);
  const std::vector<double> s_up = geometry.s_field.sample(n_up);

  const double scale = two_pi / geometry.L;
  std::vector<double> nodes(static_cast<size_t>(n_up));
  std::vector<cplx> weights(static_cast<size_t>(n_up));
  for (int j = 0; j < n_up; ++j) {
    nodes[static_cast<size_t>(j)] = scale * s_up[static_cast<size_t>(j)];
    weights[static_cast<size_t>(j)] = w_up[static_cast<size_t>(j)];
  }

  const NufftPlan plan = make_nufft_plan(2 * k_max, eps);
  FourierSeries out = nufft_type1(plan, nodes, weights);
  const double factor = two_pi / (static_cast<double>(n_up) * geometry.L);
  for (auto& c : out.coeffs()) c *= factor;
  return out;
}

ArclengthInvariants extract(const PlanarCurveSamples& curve, const ExtractParams& params) {
  const int n = curve.grid.n;
  const int n_up = params.n_up > 0 ? params.n_up : default_upsampling(curve.kind, n);
  const int k_max = params.k_max > 0 ? params.k_max : n / 2;

  const CurveGeometry geometry = compute_geometry(curve);

  ArclengthInvariants inv;
  inv.L = geometry.L;
  inv.k_max = k_max;
  inv.kind = curve.kind;
  inv.base_x = curve.x[0];
  inv.base_y = curve.y[0];
  inv.theta0 = geometry.theta0;
  inv.resolution_warning = geometry.resolution_warning;

  // Invariant curvature coefficients, then the angle on the uniform grid of
  // the rescaled arclength u = 2 pi s / L (Nyquist-matched to the band).
  const FourierSeries f_kappa = arclength_coeffs(geometry.kappa, geometry, n_up, k_max, params.eps);
  const int ns = 2 * k_max;

  FourierSeries dtheta_du = (geometry.L / two_pi) * f_kappa;
  const double turning = curve.kind == CurveKind::closed ? 1.0 : 0.0;
  const SemiPeriodicField theta_int = antiderivative(dtheta_du);
  const std::vector<double> theta_per = inverse_samples(theta_int.periodic, ns);

  std::vector<double> cos_t(static_cast<size_t>(ns)), sin_t(static_cast<size_t>(ns));
  const UniformGrid ugrid(ns);
  for (int j = 0; j < ns; ++j) {
    const double th = inv.theta0 + turning * ugrid.node(j) + theta_per[static_cast<size_t>(j)];
    cos_t[static_cast<size_t>(j)] = std::cos(th);
    sin_t[static_cast<size_t>(j)] = std::sin(th);
  }

  const double ds_du = geometry.L / two_pi;
  const SemiPeriodicField X = antiderivative(ds_du * forward_coeffs(cos_t));
  const SemiPeriodicField Y = antiderivative(ds_du * forward_coeffs(sin_t));

  // The linear parts are pinned to their exact values (closure for closed
  // curves, one x-period per arclength period otherwise); the residual is the
  // closure defect. In the scaled variable the expected slope of x is exactly
  // 1 for horizontally periodic curves: x advances by 2 pi per period of u.
  const double ex = curve.kind == CurveKind::closed ? 0.0 : 1.0;
  const double sx = X.slope.mean(), sy = Y.slope.mean();
  inv.closure_defect = two_pi * std::hypot(sx - ex, sy);
  if (inv.closure_defect > kClosureTolerance * inv.L) {
    if (params.enforce_closure)
      fail(errc::resolution, "closure defect " + std::to_string(inv.closure_defect) +
                                 " exceeds tolerance; increase N1 or N_up");
    inv.resolution_warning = true;
  }

  inv.cx = X.periodic;
  inv.cy = Y.periodic;
  inv.slope_x = ex * two_pi / inv.L;
  inv.slope_y = 0.0;
  return inv;
}

std::vector<std::pair<double, double>> invert(const ArclengthInvariants& inv,
                                              std::span<const double> s_targets, double eps) {
  const double scale = two_pi / inv.L;
  std::vector<double> nodes(s_targets.size());
  for (size_t j = 0; j < s_targets.size(); ++j) nodes[j] = scale * s_targets[j];

  // cx and cy are conjugate-symmetric (real curve), so both evaluate in one
  // complex transform.
  const NufftPlan plan = make_nufft_plan(inv.cx.modes(), eps);
  const SpreadTable table = make_spread_table(plan, nodes);
  const RealPairValues values = nufft_type2_real_pair(plan, table, nodes, inv.cx, inv.cy);

  std::vector<std::pair<double, double>> out(s_targets.size());
  for (size_t j = 0; j < s_targets.size(); ++j) {
    const double s = s_targets[j];
    out[j] = {inv.base_x + inv.slope_x * s + values.a[j],
              inv.base_y + inv.slope_y * s + values.b[j]};
  }
  return out;
}

}  // namespace equi
