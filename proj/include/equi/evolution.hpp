#pragma once

#include <vector>

#include "equi/monitor.hpp"
#include "equi/nufft.hpp"

namespace equi {

/// Velocity data of the artificial curve at a fixed interpolation time t,
/// stored as Fourier series on the uniform rescaled-arclength grid; the
/// fields that are not periodic on the open curve live in the q + s r
/// algebra.
struct EvolutionFields {
  double t = 0.0;
  int n = 0;  // grid / band size

  std::vector<double> kappa;  // samples (positivity diagnostics, tests)
  FourierSeries kappa_series;
  FourierSeries kappa_s;
  FourierSeries kappa_t;
  FourierSeries theta_t;      // periodic, theta_t(0) = 0
  SemiPeriodicField theta;    // s + periodic part
  FourierSeries x_s, y_s;     // cos theta, sin theta
  SemiPeriodicField x_t, y_t;
  SemiPeriodicField U, U_s, U_ss;
};

/// End-point curvatures of the interpolation; both must have mean exactly 1.
struct InterpolationEnds {
  FourierSeries kappa0;
  FourierSeries kappa1;
};

/// Local spacing state on the alpha-grid of the artificial curve (total
/// length fixed at 2pi, so mean(s_alpha) stays 1 up to drift).
struct SpacingState {
  double t = 0.0;
  std::vector<double> s_alpha;
};

/// s(alpha) at the grid nodes by spectral integration.
std::vector<double> arclength_of(const SpacingState& state);

enum class EvalMode {
  automatic,  // direct summation below the crossover size, NUFFT above
  direct,
  nufft,
};

EvolutionFields build_fields(const InterpolationEnds& ends, double t, int n2);
EvolutionFields build_fields(const NormalizedMonitor& phi_star, double t, int n2);

/// Right-hand side s_{alpha,t} = V_alpha - theta_alpha U of the
/// equidistribution motion for the curvature monitor, with
///   V = -U_s / kappa,
///   V_alpha = -s_alpha (kappa_s/kappa) V - (s_alpha/kappa) U_ss,
/// evaluated at the moving nodes s(alpha_j).
std::vector<double> spacing_rhs(const SpacingState& state, const EvolutionFields& fields,
                                double eps, EvalMode mode = EvalMode::automatic);

struct EvolveOptions {
  int n2 = 0;
  double dt = 0.0;
  double eps = 1e-15;
  EvalMode mode = EvalMode::automatic;
};

struct EvolveResult {
  SpacingState state;
  double max_mean_drift = 0.0;  // max |mean(s_alpha) - 1| over the run
  double min_spacing = 0.0;     // min s_alpha over the run
  int steps = 0;
  bool drift_warning = false;   // drift exceeded 1e-8
};

/// Classical fixed-step RK4 from the unit circle (s_alpha = 1 at t = 0) to
/// the equidistributing spacing at t = 1; fields are rebuilt at each stage
/// time.
EvolveResult evolve(const NormalizedMonitor& phi_star, const EvolveOptions& options);

/// Warm-start variant for chained reparametrization: arbitrary admissible
/// end-point curvatures and initial state (the equidistributing spacing of
/// kappa0).
EvolveResult evolve_interpolated(const InterpolationEnds& ends, const SpacingState& initial,
                                 const EvolveOptions& options);

/// max_j |s_alpha phi*(s(alpha_j)) - mean| / mean, the literal residual of
/// the equidistribution rule.
double equidistribution_residual(const SpacingState& state, const NormalizedMonitor& phi_star);

}  // namespace equi
