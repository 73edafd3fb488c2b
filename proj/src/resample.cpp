#include "equi/resample.hpp"

#include <cmath>

namespace equi {

RefinedCurve refine(const ArclengthInvariants& inv, const SpacingState& spacing, int n3,
                    double eps) {
  const int n2 = static_cast<int>(spacing.s_alpha.size());
  if (n3 < n2)
    fail(errc::under_resolution,
         "output size must be >= the spacing grid size (the new representation "
         "has to resolve s_alpha itself)");
  UniformGrid grid(n3);

  // s_alpha (not s) is interpolated: the linear part of the monotone map is
  // carried exactly by the anti-derivative.
  const FourierSeries sa = forward_coeffs(spacing.s_alpha);
  const std::vector<double> s_new = antiderivative(sa).sample(n3);

  RefinedCurve out{grid, {}, {}, {}, 0, n2, {}};
  out.s_targets.resize(static_cast<size_t>(n3));
  const double scale = inv.L / two_pi;
  for (int j = 0; j < n3; ++j) out.s_targets[static_cast<size_t>(j)] = scale * s_new[static_cast<size_t>(j)];
  for (int j = 1; j < n3; ++j)
    if (!(out.s_targets[static_cast<size_t>(j)] > out.s_targets[static_cast<size_t>(j - 1)]))
      fail(errc::monotonicity_loss, "interpolated arclength targets are not increasing");

  const auto points = invert(inv, out.s_targets, eps);
  out.x.resize(points.size());
  out.y.resize(points.size());
  for (size_t j = 0; j < points.size(); ++j) {
    out.x[j] = points[j].first;
    out.y[j] = points[j].second;
  }
  return out;
}

PlanarCurveSamples as_curve_samples(const RefinedCurve& refined, CurveKind kind) {
  return PlanarCurveSamples{refined.grid, refined.x, refined.y, kind};
}

PlanarCurveSamples subsample(const PlanarCurveSamples& curve, int n_coarse) {
  const int n = curve.grid.n;
  if (n_coarse > n || n % n_coarse != 0)
    fail(errc::invalid_grid, "coarse size must divide the fine size");
  UniformGrid grid(n_coarse);
  const int stride = n / n_coarse;
  PlanarCurveSamples out{grid, {}, {}, curve.kind};
  out.x.resize(static_cast<size_t>(n_coarse));
  out.y.resize(static_cast<size_t>(n_coarse));
  for (int j = 0; j < n_coarse; ++j) {
    out.x[static_cast<size_t>(j)] = curve.x[static_cast<size_t>(j * stride)];
    out.y[static_cast<size_t>(j)] = curve.y[static_cast<size_t>(j * stride)];
  }
  return out;
}

}  // namespace equi
