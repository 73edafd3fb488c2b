#pragma once

#include <string>
#include <vector>

#include "equi/evolution.hpp"
#include "equi/invariants.hpp"

namespace equi {

/// Step-3 output: the input curve re-sampled at the equidistributing
/// arclength targets.
struct RefinedCurve {
  UniformGrid grid;
  std::vector<double> x, y;
  std::vector<double> s_targets;  // physical arclength values used, s[0] = 0
  int n1 = 0, n2 = 0;             // provenance
  std::string monitor_name;
};

/// Interpolates the evolved spacing to n3 nodes (n3 >= n2 so the spacing
/// itself stays resolved), integrates to the new arclength map, rescales by
/// L/2pi, and inverts the invariants there.
RefinedCurve refine(const ArclengthInvariants& inv, const SpacingState& spacing, int n3,
                    double eps);

/// The refined representation as plain curve samples (kind inherited from
/// the invariants).
PlanarCurveSamples as_curve_samples(const RefinedCurve& refined, CurveKind kind);

/// Every stride-th sample of an equispaced representation; the coarse view
/// of the same parametrization used by the downsampling validation.
PlanarCurveSamples subsample(const PlanarCurveSamples& curve, int n_coarse);

}  // namespace equi
