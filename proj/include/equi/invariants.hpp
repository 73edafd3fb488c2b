#pragma once

#include <span>
#include <utility>
#include <vector>

#include "equi/geometry.hpp"
#include "equi/nufft.hpp"

namespace equi {

/// Parametrization-invariant data of a periodic curve: total length plus the
/// Fourier coefficients of the periodic parts of the arclength
/// parametrization x(s), y(s), anchored by a base point and base angle so
/// that inversion overlays the input exactly.
struct ArclengthInvariants {
  double L = 0.0;
  int k_max = 0;
  FourierSeries cx, cy;      // coefficients vs u = 2 pi s / L, k = -k_max..k_max-1
  double slope_x = 0.0;      // d/ds linear parts: closed -> 0; horizontally
  double slope_y = 0.0;      //   periodic -> (2 pi / L, 0)
  double base_x = 0.0, base_y = 0.0;  // curve point at alpha = 0 (s = 0)
  double theta0 = 0.0;                // tangent angle at s = 0
  CurveKind kind = CurveKind::closed;
  double closure_defect = 0.0;        // |X(L) - X(0)| before slope pinning
  bool resolution_warning = false;
};

struct ExtractParams {
  int n_up = 0;             // upsampled grid size (>= input n); 0 = kind default
  int k_max = 0;            // highest retained wavenumber; 0 = n/2
  double eps = 1e-15;       // NUFFT relative accuracy
  bool enforce_closure = true;  // demote the closure-defect error to a warning
};

/// Default upsampling: 2 n for closed inputs, 16 n capped at 65536 for
/// horizontally periodic inputs.
int default_upsampling(CurveKind kind, int n);

/// Fourier coefficients of f with respect to arclength over period L:
///   F[f](k) ~= (h/L) sum_j (f s_alpha)(alpha_j) e^{-2 pi i k s(alpha_j)/L}
/// on the n_up-point upsampled grid, summed by Type-1 NUFFT. f must be a
/// periodic function sampled on the same alpha-grid as the geometry.
FourierSeries arclength_coeffs(std::span<const double> f_samples, const CurveGeometry& geometry,
                               int n_up, int k_max, double eps);

ArclengthInvariants extract(const PlanarCurveSamples& curve, const ExtractParams& params);

/// Evaluates the invariant representation at arbitrary arclength targets in
/// [0, L] (Type-2 NUFFT): x(s) = x0 + slope_x s + Re sum_k cx(k) e^{ik 2pi s/L}.
std::vector<std::pair<double, double>> invert(const ArclengthInvariants& inv,
                                              std::span<const double> s_targets, double eps);

}  // namespace equi
