#pragma once

#include <span>
#include <vector>

#include "equi/spectral.hpp"

namespace equi {

enum class CurveKind {
  closed,                 // x, y both 2pi-periodic in alpha
  horizontally_periodic,  // x - alpha periodic (unit slope), y periodic
};

/// Parametric planar curve sampled on the equispaced alpha-grid.
struct PlanarCurveSamples {
  UniformGrid grid;
  std::vector<double> x, y;
  CurveKind kind = CurveKind::closed;
};

/// Differential geometry of a sampled curve: local spacing, signed curvature,
/// tangent angle, arclength map, total length.
struct CurveGeometry {
  std::vector<double> s_alpha;     // sqrt(x_a^2 + y_a^2) > 0
  std::vector<double> kappa;       // y_ss x_s - y_s x_ss
  std::vector<double> s_of_alpha;  // anti-derivative of s_alpha, s(0) = 0
  SemiPeriodicField s_field;       // s(alpha) as slope + periodic part
  SemiPeriodicField theta;         // tangent angle; slope = turning number
  std::vector<double> x_s, y_s;    // unit tangent components
  double L = 0.0;                  // total length, s(2pi)
  double theta0 = 0.0;             // atan2(y_a, x_a) at alpha = 0
  double turning = 0.0;            // (1/2pi) closed integral of kappa ds
  double tail_ratio = 0.0;         // coefficient-tail indicator of the input
  bool resolution_warning = false;
};

/// Spectral computation of the geometry. The tangent angle is obtained by
/// integrating theta_alpha = s_alpha kappa from a single base value rather
/// than by pointwise arctan, so no branch-cut unwrapping is ever needed.
CurveGeometry compute_geometry(const PlanarCurveSamples& curve);

struct UnitVectors {
  std::vector<double> tx, ty;  // tangent (x_s, y_s)
  std::vector<double> nx, ny;  // normal (-y_s, x_s)
};

UnitVectors unit_vectors(const CurveGeometry& geometry);

}  // namespace equi
