#include "equi/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace equi {

namespace {

// Below this grid size direct summation beats the fast transform and has no
// kernel floor; above it the NUFFT path is required for O(n log n) stages.
constexpr int kDirectCrossover = 512;

constexpr double kDriftWarn = 1e-8;

}  // namespace

std::vector<double> arclength_of(const SpacingState& state) {
  return antiderivative(forward_coeffs(state.s_alpha)).sample(static_cast<int>(state.s_alpha.size()));
}

EvolutionFields build_fields(const InterpolationEnds& ends, double t, int n2) {
  UniformGrid grid(n2);
  const FourierSeries k0 = ends.kappa0.pad_to(n2);
  const FourierSeries k1 = ends.kappa1.pad_to(n2);
  if (std::abs(k0.at(0) - 1.0) > 1e-12 || std::abs(k1.at(0) - 1.0) > 1e-12)
    fail(errc::invalid_spec, "interpolation end-point curvatures must have unit mean");

  EvolutionFields f;
  f.t = t;
  f.n = n2;

  // kappa(s, t) = (1 - t) kappa0 + t kappa1; both ends are positive with mean
  // one, so the interpolant keeps both properties at every t.
  f.kappa_series = (1.0 - t) * k0 + t * k1;
  f.kappa = inverse_samples(f.kappa_series, n2);
  double min_k = f.kappa[0];
  for (double v : f.kappa) min_k = std::min(min_k, v);
  if (!(min_k > 0.0))
    fail(errc::positivity, "interpolated curvature lost positivity at t = " + std::to_string(t));

  f.kappa_s = differentiate(f.kappa_series);
  f.kappa_t = k1 - k0;
  f.theta_t = antiderivative(f.kappa_t).periodic;  // integrand has zero mean

  FourierSeries kappa_m1 = f.kappa_series;
  kappa_m1.at(0) -= 1.0;
  FourierSeries one(n2);
  one.at(0) = 1.0;
  f.theta = SemiPeriodicField{antiderivative(kappa_m1).periodic, one};

  const std::vector<double> theta = f.theta.sample(n2);
  std::vector<double> cos_t(theta.size()), sin_t(theta.size());
  for (size_t i = 0; i < theta.size(); ++i) {
    cos_t[i] = std::cos(theta[i]);
    sin_t[i] = std::sin(theta[i]);
  }
  f.x_s = forward_coeffs(cos_t);
  f.y_s = forward_coeffs(sin_t);

  // x_t = -d^{-1}[theta_t sin theta], y_t = d^{-1}[theta_t cos theta]; the
  // integrand means become the slopes of the open curve's velocity.
  const std::vector<double> tt = inverse_samples(f.theta_t, n2);
  std::vector<double> ix(tt.size()), iy(tt.size());
  for (size_t i = 0; i < tt.size(); ++i) {
    ix[i] = -tt[i] * sin_t[i];
    iy[i] = tt[i] * cos_t[i];
  }
  f.x_t = antiderivative(forward_coeffs(ix));
  f.y_t = antiderivative(forward_coeffs(iy));

  // Products stay inside the q + s r algebra: every factor multiplying a
  // semi-periodic field is purely periodic, so total s-degree stays <= 1.
  const std::vector<double> qxt = inverse_samples(f.x_t.periodic, n2);
  const std::vector<double> qyt = inverse_samples(f.y_t.periodic, n2);
  const double cxt = f.x_t.slope.mean();
  const double cyt = f.y_t.slope.mean();

  const size_t n = static_cast<size_t>(n2);
  std::vector<double> qU(n), rU(n), qW(n), rW(n), qUs(n), rUs(n), qUss(n), rUss(n);
  const std::vector<double> kt = inverse_samples(f.kappa_t, n2);
  const std::vector<double> ks = inverse_samples(f.kappa_s, n2);
  for (size_t i = 0; i < n; ++i) {
    // U = -y_s x_t + x_s y_t     (normal velocity)
    qU[i] = -sin_t[i] * qxt[i] + cos_t[i] * qyt[i];
    rU[i] = -sin_t[i] * cxt + cos_t[i] * cyt;
    // W = x_s x_t + y_s y_t      (tangential projection of X_t)
    qW[i] = cos_t[i] * qxt[i] + sin_t[i] * qyt[i];
    rW[i] = cos_t[i] * cxt + sin_t[i] * cyt;
    // U_s = -kappa W + theta_t
    qUs[i] = -f.kappa[i] * qW[i] + tt[i];
    rUs[i] = -f.kappa[i] * rW[i];
    // U_ss = -kappa^2 U + (kappa_s / kappa)(U_s - theta_t) + kappa_t
    const double ratio = ks[i] / f.kappa[i];
    qUss[i] = -f.kappa[i] * f.kappa[i] * qU[i] + ratio * (qUs[i] - tt[i]) + kt[i];
    rUss[i] = -f.kappa[i] * f.kappa[i] * rU[i] + ratio * rUs[i];
  }

  f.U = SemiPeriodicField{forward_coeffs(qU), forward_coeffs(rU)};
  f.U_s = SemiPeriodicField{forward_coeffs(qUs), forward_coeffs(rUs)};
  f.U_ss = SemiPeriodicField{forward_coeffs(qUss), forward_coeffs(rUss)};
  return f;
}

EvolutionFields build_fields(const NormalizedMonitor& phi_star, double t, int n2) {
  FourierSeries one(2);
  one.at(0) = 1.0;
  return build_fields(InterpolationEnds{std::move(one), phi_star.phi_star}, t, n2);
}

std::vector<double> spacing_rhs(const SpacingState& state, const EvolutionFields& fields,
                                double eps, EvalMode mode) {
  const size_t n = state.s_alpha.size();
  const std::vector<double> s = arclength_of(state);
  for (double v : s)
    if (!(v >= -1e-9 && v <= two_pi + 1e-9))
      fail(errc::monotonicity_loss, "arclength left [0, 2pi]; spacing lost positivity");

  const bool direct = mode == EvalMode::direct ||
                      (mode == EvalMode::automatic && fields.n <= kDirectCrossover);

  RealPairValues k_ks, u, us, uss;
  if (direct) {
    k_ks = direct_type2_real_pair(s, fields.kappa_series, fields.kappa_s);
    u = direct_type2_real_pair(s, fields.U.periodic, fields.U.slope);
    us = direct_type2_real_pair(s, fields.U_s.periodic, fields.U_s.slope);
    uss = direct_type2_real_pair(s, fields.U_ss.periodic, fields.U_ss.slope);
  } else {
    const NufftPlan plan = make_nufft_plan(fields.n, eps);
    const SpreadTable table = make_spread_table(plan, s);
    k_ks = nufft_type2_real_pair(plan, table, s, fields.kappa_series, fields.kappa_s);
    u = nufft_type2_real_pair(plan, table, s, fields.U.periodic, fields.U.slope);
    us = nufft_type2_real_pair(plan, table, s, fields.U_s.periodic, fields.U_s.slope);
    uss = nufft_type2_real_pair(plan, table, s, fields.U_ss.periodic, fields.U_ss.slope);
  }

  std::vector<double> out(n);
  for (size_t j = 0; j < n; ++j) {
    const double kappa = k_ks.a[j];
    const double kappa_s = k_ks.b[j];
    const double U = u.a[j] + s[j] * u.b[j];
    const double U_s = us.a[j] + s[j] * us.b[j];
    const double U_ss = uss.a[j] + s[j] * uss.b[j];
    const double sa = state.s_alpha[j];

    const double V = -U_s / kappa;
    const double V_alpha = -sa * (kappa_s / kappa) * V - (sa / kappa) * U_ss;
    out[j] = V_alpha - sa * kappa * U;
  }
  return out;
}

namespace {

EvolveResult run_rk4(const InterpolationEnds& ends, SpacingState state,
                     const EvolveOptions& options) {
  const int n2 = static_cast<int>(state.s_alpha.size());
  UniformGrid::validate(n2);
  if (!(options.dt > 0.0 && options.dt <= 0.25))
    fail(errc::parameter, "dt must lie in (0, 0.25]");

  EvolveResult result;
  result.min_spacing = std::numeric_limits<double>::max();

  const int steps = static_cast<int>(std::ceil(1.0 / options.dt - 1e-12));
  const size_t n = static_cast<size_t>(n2);

  // Fields depend only on the stage time; the end-of-step fields are the next
  // step's start fields when the step size repeats.
  EvolutionFields f_start = build_fields(ends, state.t, n2);
  std::vector<double> stage(n);

  auto track = [&](const SpacingState& st) {
    double mean = 0.0, min_v = st.s_alpha[0];
    for (double v : st.s_alpha) {
      mean += v;
      min_v = std::min(min_v, v);
    }
    mean /= static_cast<double>(st.s_alpha.size());
    result.max_mean_drift = std::max(result.max_mean_drift, std::abs(mean - 1.0));
    result.min_spacing = std::min(result.min_spacing, min_v);
    if (!(min_v > 0.0))
      fail(errc::positivity, "spacing positivity lost at t = " + std::to_string(st.t));
  };
  track(state);

  for (int i = 0; i < steps; ++i) {
    const double t = state.t;
    const double h = std::min(options.dt, 1.0 - t);
    const EvolutionFields f_half = build_fields(ends, t + 0.5 * h, n2);
    const EvolutionFields f_end = build_fields(ends, t + h, n2);

    const std::vector<double> k1 = spacing_rhs(state, f_start, options.eps, options.mode);
    SpacingState tmp{t + 0.5 * h, stage};
    for (size_t j = 0; j < n; ++j) tmp.s_alpha[j] = state.s_alpha[j] + 0.5 * h * k1[j];
    const std::vector<double> k2 = spacing_rhs(tmp, f_half, options.eps, options.mode);
    for (size_t j = 0; j < n; ++j) tmp.s_alpha[j] = state.s_alpha[j] + 0.5 * h * k2[j];
    const std::vector<double> k3 = spacing_rhs(tmp, f_half, options.eps, options.mode);
    tmp.t = t + h;
    for (size_t j = 0; j < n; ++j) tmp.s_alpha[j] = state.s_alpha[j] + h * k3[j];
    const std::vector<double> k4 = spacing_rhs(tmp, f_end, options.eps, options.mode);

    const double w = h / 6.0;
    for (size_t j = 0; j < n; ++j)
      state.s_alpha[j] += w * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]);
    state.t = t + h;
    track(state);
    f_start = f_end;
  }

  state.t = 1.0;
  result.state = std::move(state);
  result.steps = steps;
  result.drift_warning = result.max_mean_drift > kDriftWarn;
  return result;
}

}  // namespace

EvolveResult evolve(const NormalizedMonitor& phi_star, const EvolveOptions& options) {
  UniformGrid::validate(options.n2);
  FourierSeries one(2);
  one.at(0) = 1.0;
  SpacingState initial{0.0, std::vector<double>(static_cast<size_t>(options.n2), 1.0)};
  return run_rk4(InterpolationEnds{std::move(one), phi_star.phi_star}, std::move(initial), options);
}

EvolveResult evolve_interpolated(const InterpolationEnds& ends, const SpacingState& initial,
                                 const EvolveOptions& options) {
  SpacingState start = initial;
  start.t = 0.0;
  return run_rk4(ends, std::move(start), options);
}

double equidistribution_residual(const SpacingState& state, const NormalizedMonitor& phi_star) {
  const std::vector<double> s = arclength_of(state);
  // Direct summation keeps the diagnostic free of any transform floor.
  const RealPairValues phi =
      direct_type2_real_pair(s, phi_star.phi_star, FourierSeries(phi_star.phi_star.modes()));

  double mean = 0.0;
  std::vector<double> product(s.size());
  for (size_t j = 0; j < s.size(); ++j) {
    product[j] = state.s_alpha[j] * phi.a[j];
    mean += product[j];
  }
  mean /= static_cast<double>(s.size());

  double worst = 0.0;
  for (double p : product) worst = std::max(worst, std::abs(p - mean));
  return worst / mean;
}

}  // namespace equi
