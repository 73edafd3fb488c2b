#include "equi/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "equi/resample.hpp"

namespace equi {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlNode[16] = {
    -0.9894009349916499325961542, -0.9445750230732325760779884, -0.8656312023878317438804679,
    -0.7554044083550030338951012, -0.6178762444026437484466718, -0.4580167776572273863424194,
    -0.2816035507792589132304605, -0.0950125098376374401853193, 0.0950125098376374401853193,
    0.2816035507792589132304605,  0.4580167776572273863424194,  0.6178762444026437484466718,
    0.7554044083550030338951012,  0.8656312023878317438804679,  0.9445750230732325760779884,
    0.9894009349916499325961542};
constexpr double kGlWeight[16] = {
    0.0271524594117540948517806, 0.0622535239386478928628438, 0.0951585116824927848099251,
    0.1246289712555338720524763, 0.1495959888165767320815017, 0.1691565193950025381893121,
    0.1826034150449235888667637, 0.1894506104550684962853967, 0.1894506104550684962853967,
    0.1826034150449235888667637, 0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251, 0.0622535239386478928628438,
    0.0271524594117540948517806};

// Peakon image count: the envelope decays like e^{-scale |u|}, so images
// beyond e^{-scale d} < 1e-16 / amplitude are dropped.
int peakon_images(double amplitude, double scale) {
  const double reach = std::log(amplitude / 1e-16) / scale;
  return std::max(1, static_cast<int>(std::ceil((reach / two_pi + 1.0) / 2.0)) + 1);
}

struct PeakonTerm {
  double amplitude, center, scale;
};

constexpr PeakonTerm kPeakonTerms[2] = {{2.0, 0.5, 1.0}, {4.0, 4.0, 2.0}};

}  // namespace

double DropletShape::r(double eta) const {
  const double c = std::cos(eta - M_PI / 4.0);
  return 1.0 + eps_p * 0.5 * (3.0 * c * c - 1.0);
}

double DropletShape::r_eta(double eta) const {
  const double c = std::cos(eta - M_PI / 4.0);
  const double s = std::sin(eta - M_PI / 4.0);
  return -3.0 * eps_p * c * s;
}

double DropletShape::r_etaeta(double eta) const {
  return -3.0 * eps_p * std::cos(2.0 * (eta - M_PI / 4.0));
}

double DropletShape::local_spacing(double eta) const { return std::hypot(r(eta), r_eta(eta)); }

double DropletShape::curvature(double eta) const {
  const double rr = r(eta), rp = r_eta(eta), rpp = r_etaeta(eta);
  const double g = rr * rr + rp * rp;
  return (rr * rr + 2.0 * rp * rp - rr * rpp) / (g * std::sqrt(g));
}

double PeakonShape::y(double x) const {
  double acc = 0.0;
  for (const PeakonTerm& t : kPeakonTerms) {
    const int jmax = peakon_images(t.amplitude, t.scale);
    for (int j = -jmax; j <= jmax; ++j) {
      const double u = t.scale * (x - t.center + two_pi * j);
      acc += t.amplitude * std::exp(-std::sqrt(u * u + eps_r));
    }
  }
  return acc;
}

double PeakonShape::y_x(double x) const {
  double acc = 0.0;
  for (const PeakonTerm& t : kPeakonTerms) {
    const int jmax = peakon_images(t.amplitude, t.scale);
    for (int j = -jmax; j <= jmax; ++j) {
      const double u = t.scale * (x - t.center + two_pi * j);
      const double g = std::sqrt(u * u + eps_r);
      acc += t.amplitude * std::exp(-g) * (-t.scale * u / g);
    }
  }
  return acc;
}

double PeakonShape::y_xx(double x) const {
  double acc = 0.0;
  for (const PeakonTerm& t : kPeakonTerms) {
    const int jmax = peakon_images(t.amplitude, t.scale);
    for (int j = -jmax; j <= jmax; ++j) {
      const double u = t.scale * (x - t.center + two_pi * j);
      const double g = std::sqrt(u * u + eps_r);
      const double du = t.scale * u / g;
      // d/dx [e^{-g}] = -du e^{-g}; d/dx [du] = scale^2 eps_r / g^3.
      acc += t.amplitude * std::exp(-g) * (du * du - t.scale * t.scale * eps_r / (g * g * g));
    }
  }
  return acc;
}

double PeakonShape::local_spacing(double x) const { return std::hypot(1.0, y_x(x)); }

double PeakonShape::curvature(double x) const {
  const double yp = y_x(x);
  const double g = 1.0 + yp * yp;
  return y_xx(x) / (g * std::sqrt(g));
}

ExampleCurve ExampleCurve::circle() {
  ExampleCurve c;
  c.name_ = "circle";
  return c;
}

ExampleCurve ExampleCurve::droplet(double eps_p) {
  if (!(eps_p > 0.0 && eps_p < 2.0))
    fail(errc::parameter, "droplet deformation must lie in (0, 2)");
  ExampleCurve c;
  c.name_ = "droplet";
  c.droplet_ = DropletShape{eps_p};
  return c;
}

ExampleCurve ExampleCurve::peakons(double eps_r) {
  if (!(eps_r > 0.0)) fail(errc::parameter, "peakon rounding parameter must be positive");
  ExampleCurve c;
  c.name_ = "peakons";
  c.peakons_ = PeakonShape{eps_r};
  return c;
}

CurveKind ExampleCurve::kind() const {
  return peakons_ ? CurveKind::horizontally_periodic : CurveKind::closed;
}

std::pair<double, double> ExampleCurve::point(double p) const {
  if (droplet_) return {droplet_->x(p), droplet_->y(p)};
  if (peakons_) return {p, peakons_->y(p)};
  return {std::cos(p), std::sin(p)};
}

double ExampleCurve::local_spacing(double p) const {
  if (droplet_) return droplet_->local_spacing(p);
  if (peakons_) return peakons_->local_spacing(p);
  return 1.0;
}

double ExampleCurve::curvature(double p) const {
  if (droplet_) return droplet_->curvature(p);
  if (peakons_) return peakons_->curvature(p);
  return 1.0;
}

PlanarCurveSamples ExampleCurve::sample(int n) const {
  UniformGrid grid(n);
  PlanarCurveSamples out{grid, {}, {}, kind()};
  out.x.resize(static_cast<size_t>(n));
  out.y.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const auto [px, py] = point(grid.node(j));
    out.x[static_cast<size_t>(j)] = px;
    out.y[static_cast<size_t>(j)] = py;
  }
  return out;
}

double ExampleCurve::kappa_max() const {
  const int scan = 200000;
  double best = 0.0, best_p = 0.0;
  for (int j = 0; j <= scan; ++j) {
    const double p = two_pi * j / scan;
    const double k = std::abs(curvature(p));
    if (k > best) {
      best = k;
      best_p = p;
    }
  }
  // Golden-section refinement of |kappa| around the scan winner.
  double a = best_p - two_pi / scan, b = best_p + two_pi / scan;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  for (int it = 0; it < 200; ++it) {
    if (std::abs(curvature(c)) > std::abs(curvature(d)))
      b = d;
    else
      a = c;
    c = b - gr * (b - a);
    d = a + gr * (b - a);
  }
  return std::abs(curvature(0.5 * (a + b)));
}

std::vector<double> ExampleCurve::arclength_at(std::span<const double> params) const {
  // Panels no longer than 2pi/512 keep 16-point Gauss-Legendre at machine
  // accuracy for every shape in the corpus; compensated summation keeps the
  // running total exact over many panels.
  const double h_max = two_pi / 512.0;
  std::vector<double> out(params.size());
  double total = 0.0, comp = 0.0, from = 0.0;
  for (size_t i = 0; i < params.size(); ++i) {
    const double to = params[i];
    if (to < from) fail(errc::parameter, "arclength targets must be ascending");
    const int panels = std::max(1, static_cast<int>(std::ceil((to - from) / h_max)));
    for (int p = 0; p < panels; ++p) {
      const double a = from + (to - from) * p / panels;
      const double b = from + (to - from) * (p + 1) / panels;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      double panel = 0.0;
      for (int q = 0; q < 16; ++q) panel += kGlWeight[q] * local_spacing(mid + half * kGlNode[q]);
      panel *= half;
      const double t = total + panel;  // Kahan
      comp += (total - t) + panel;
      total = t;
    }
    out[i] = total + comp;
    from = to;
  }
  return out;
}

double ExampleCurve::total_length() const {
  const double p = two_pi;
  return arclength_at(std::span<const double>(&p, 1))[0];
}

ExampleCurve make_example_curve(const std::string& name, std::span<const double> params) {
  if (name == "circle") return ExampleCurve::circle();
  if (name == "droplet") return ExampleCurve::droplet(params.empty() ? 2.0 / 7.0 : params[0]);
  if (name == "peakons") return ExampleCurve::peakons(params.empty() ? 1e-2 : params[0]);
  fail(errc::parameter, "unknown example curve: " + name);
}

PlanarCurveSamples make_example(const std::string& name, std::span<const double> params, int n) {
  return make_example_curve(name, params).sample(n);
}

double arc_linf_error(const ArclengthInvariants& inv, const ExampleCurve& truth, int dense_n,
                      double eps) {
  std::vector<double> params(static_cast<size_t>(dense_n));
  for (int i = 0; i < dense_n; ++i) params[static_cast<size_t>(i)] = two_pi * i / dense_n;
  const std::vector<double> s = truth.arclength_at(params);

  const auto points = invert(inv, s, eps);
  double max_x = 0.0, max_y = 0.0, err_x = 0.0, err_y = 0.0;
  for (int i = 0; i < dense_n; ++i) {
    const auto [tx, ty] = truth.point(params[static_cast<size_t>(i)]);
    max_x = std::max(max_x, std::abs(tx));
    max_y = std::max(max_y, std::abs(ty));
    err_x = std::max(err_x, std::abs(points[static_cast<size_t>(i)].first - tx));
    err_y = std::max(err_y, std::abs(points[static_cast<size_t>(i)].second - ty));
  }
  return std::max(err_x / max_x, err_y / max_y);
}

InvariantsComparison compare_invariants(const ArclengthInvariants& ref,
                                        const ArclengthInvariants& test, int dense_n) {
  InvariantsComparison out;
  out.length_mismatch = std::abs(test.L - ref.L) / ref.L;
  out.length_flagged = out.length_mismatch > 1e-8;

  // Plancherel metric on the common band, zero padded: a narrower test band
  // counts the reference's missing modes as error, never the other way round.
  const int m = std::max(ref.cx.modes(), test.cx.modes());
  const FourierSeries rx = ref.cx.pad_to(m), ry = ref.cy.pad_to(m);
  const FourierSeries tx = test.cx.pad_to(m), ty = test.cy.pad_to(m);
  double diff2 = 0.0, norm2 = 0.0;
  for (int k = -m / 2; k < m / 2; ++k) {
    diff2 += std::norm(tx.at(k) - rx.at(k)) + std::norm(ty.at(k) - ry.at(k));
    norm2 += std::norm(rx.at(k)) + std::norm(ry.at(k));
  }
  out.l2_rel = std::sqrt(diff2 / norm2);

  std::vector<double> s(static_cast<size_t>(dense_n));
  for (int i = 0; i < dense_n; ++i) s[static_cast<size_t>(i)] = ref.L * i / dense_n;
  const auto pr = invert(ref, s, 1e-15);
  const auto pt = invert(test, s, 1e-15);
  double max_mag = 0.0, max_dist = 0.0;
  for (int i = 0; i < dense_n; ++i) {
    const size_t j = static_cast<size_t>(i);
    max_mag = std::max(max_mag, std::hypot(pr[j].first, pr[j].second));
    max_dist = std::max(max_dist, std::hypot(pt[j].first - pr[j].first, pt[j].second - pr[j].second));
  }
  out.linf_rel = max_dist / max_mag;
  return out;
}

namespace {

std::vector<double> example_params(const StudyParams& p) {
  if (p.example == "droplet") return {p.eps_p};
  if (p.example == "peakons") return {p.eps_r};
  return {};
}

ErrorTable step1_study(const StudyParams& p) {
  const ExampleCurve truth = make_example_curve(p.example, example_params(p));
  ErrorTable table{"step1_convergence", p.example, {}};
  for (int n1 : p.n_sweep) {
    // Fig 2b setting: no upsampling beyond the input grid.
    ExtractParams ep{n1, n1 / 2, p.eps, false};
    const ArclengthInvariants inv = extract(truth.sample(n1), ep);
    table.rows.push_back({n1, arc_linf_error(inv, truth, p.dense_n, p.eps), 0.0, 0.0});
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const auto& a, const auto& b) { return a.n < b.n; });
  return table;
}

ErrorTable rk4_study(const StudyParams& p) {
  const NormalizedMonitor phi = normalize(monitor_preset(p.monitor), p.rk4_n2);
  ErrorTable table{"rk4_convergence", p.monitor, {}};
  for (double dt : p.dt_sweep) {
    const EvolveResult r = evolve(phi, {p.rk4_n2, dt, p.eps, EvalMode::automatic});
    const double residual = equidistribution_residual(r.state, phi);
    table.rows.push_back({static_cast<int>(std::lround(1.0 / dt)), residual, 0.0, 0.0});
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const auto& a, const auto& b) { return a.n < b.n; });
  return table;
}

ErrorTable refinement_study(const StudyParams& p) {
  const ExampleCurve truth = make_example_curve(p.example, example_params(p));
  const CurveKind kind = truth.kind();
  const int nup_ref = p.nup_ref > 0 ? p.nup_ref : default_upsampling(kind, p.n1_ref);
  const int nup_re = p.nup_restudy > 0 ? p.nup_restudy : nup_ref;

  // Full-accuracy reference invariants, the golden artifact of the study.
  const ArclengthInvariants ref =
      extract(truth.sample(p.n1_ref), ExtractParams{nup_ref, p.kmax_ref, p.eps, true});

  SpacingState spacing;
  if (p.spacing) {
    spacing = *p.spacing;
  } else {
    const NormalizedMonitor phi = normalize(monitor_preset(p.monitor), p.n2);
    spacing = evolve(phi, {p.n2, p.dt, p.eps, EvalMode::automatic}).state;
  }

  const int n3_max = *std::max_element(p.n_sweep.begin(), p.n_sweep.end());
  const RefinedCurve refined = refine(ref, spacing, n3_max, p.eps);
  const PlanarCurveSamples refined_curve = as_curve_samples(refined, kind);

  ErrorTable table{"refinement", p.example, {}};
  for (int n : p.n_sweep) {
    const PlanarCurveSamples coarse = subsample(refined_curve, n);
    const ArclengthInvariants re =
        extract(coarse, ExtractParams{nup_re, p.kmax_ref, p.eps, false});
    const InvariantsComparison cmp = compare_invariants(ref, re, 4 * p.kmax_ref);

    const int nup_arc = default_upsampling(kind, n);
    const ArclengthInvariants arc =
        extract(truth.sample(n), ExtractParams{nup_arc, n / 2, p.eps, false});
    const double arc_err = arc_linf_error(arc, truth, p.dense_n, p.eps);
    table.rows.push_back({n, arc_err, cmp.l2_rel, cmp.linf_rel});
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const auto& a, const auto& b) { return a.n < b.n; });
  return table;
}

}  // namespace

ErrorTable run_study(StudyKind kind, const StudyParams& params) {
  switch (kind) {
    case StudyKind::step1_convergence:
      if (params.n_sweep.empty()) fail(errc::parameter, "step1 study needs an N1 sweep");
      return step1_study(params);
    case StudyKind::rk4_convergence:
      if (params.dt_sweep.empty()) fail(errc::parameter, "rk4 study needs a dt sweep");
      return rk4_study(params);
    case StudyKind::refinement:
      if (params.n_sweep.empty()) fail(errc::parameter, "refinement study needs an N3 sweep");
      return refinement_study(params);
  }
  fail(errc::parameter, "unknown study kind");
}

}  // namespace equi
