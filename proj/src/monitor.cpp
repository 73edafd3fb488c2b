#include "equi/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace equi {

namespace {

// Image cutoff: include periodic images while exp(-{b pi (2|j| - 1)}^2) can
// still reach 1e-16 of the term amplitude, so the omitted tail stays below
// 1e-15 per term.
int images_needed(double width) {
  const double reach = std::sqrt(std::log(1e16));  // ~6.07
  const int j = static_cast<int>(std::ceil((reach / (M_PI * width) + 1.0) / 2.0));
  return std::max(1, j);
}

double wrap_pm_pi(double v) {
  double y = std::remainder(v, two_pi);
  return y;
}

double eval_spec(const MonitorSpec& spec, double s) {
  double acc = spec.constant;
  for (const GaussianTerm& t : spec.terms) {
    const double v = wrap_pm_pi(s - t.center);
    const int jmax = images_needed(t.width);
    double sum = 0.0;
    for (int j = -jmax; j <= jmax; ++j) {
      const double u = t.width * (v + two_pi * j);
      sum += std::exp(-u * u);
    }
    acc += t.amplitude * sum;
  }
  return acc;
}

NormalizedMonitor normalize_from(std::vector<double> samples) {
  double min_v = std::numeric_limits<double>::max();
  for (double v : samples) min_v = std::min(min_v, v);
  if (!(min_v > 0.0)) fail(errc::positivity, "monitor must be strictly positive");

  FourierSeries series = forward_coeffs(samples);
  const double mean = series.mean();
  NormalizedMonitor out;
  out.l1_norm = two_pi * mean;
  const double inv = 1.0 / mean;
  for (auto& c : series.coeffs()) c *= inv;
  series.at(0) = 1.0;  // pin the mean exactly
  out.phi_star = std::move(series);

  double max_v = 0.0;
  min_v = std::numeric_limits<double>::max();
  for (double v : samples) {
    min_v = std::min(min_v, v * inv);
    max_v = std::max(max_v, v * inv);
  }
  out.min_value = min_v;
  out.max_value = max_v;
  return out;
}

}  // namespace

void MonitorSpec::validate() const {
  if (!(constant >= 0.0) || !std::isfinite(constant))
    fail(errc::invalid_spec, "monitor constant must be finite and >= 0");
  for (const GaussianTerm& t : terms) {
    if (!(t.amplitude > 0.0)) fail(errc::invalid_spec, "monitor term amplitude must be positive");
    if (!(t.width > 0.0)) fail(errc::invalid_spec, "monitor term width must be positive");
    if (!(t.center >= 0.0 && t.center < two_pi))
      fail(errc::invalid_spec, "monitor term center must lie in [0, 2pi)");
  }
  // Periodized Gaussians are strictly positive, so positivity only fails when
  // the spec is entirely empty.
  if (constant == 0.0 && terms.empty())
    fail(errc::invalid_spec, "monitor must be strictly positive");
}

double eval_monitor_at(const Monitor& monitor, double s) {
  if (const auto* spec = std::get_if<MonitorSpec>(&monitor)) return eval_spec(*spec, s);
  const auto& c = std::get<CosineMonitor>(monitor);
  return c.base + c.amplitude * std::cos(s);
}

std::vector<double> eval_monitor(const Monitor& monitor, std::span<const double> s) {
  if (const auto* spec = std::get_if<MonitorSpec>(&monitor)) spec->validate();
  std::vector<double> out(s.size());
  for (size_t i = 0; i < s.size(); ++i) out[i] = eval_monitor_at(monitor, s[i]);
  return out;
}

bool is_monitor_preset(std::string_view name) {
  return name == "phi0" || name == "phi1" || name == "phi2";
}

Monitor monitor_preset(std::string_view name) {
  if (name == "phi0") return CosineMonitor{0.5, 0.25};
  if (name == "phi1")
    return MonitorSpec{1.0, {{37.0, 0.0, 7.5}, {37.0, M_PI, 7.5}}};
  if (name == "phi2")
    return MonitorSpec{1.0, {{10.0, 0.4, 3.0}, {37.0, M_PI + 0.692, 7.5}}};
  fail(errc::parameter, "unknown monitor preset: " + std::string(name));
}

NormalizedMonitor normalize(const Monitor& monitor, int n) {
  UniformGrid grid(n);
  if (const auto* spec = std::get_if<MonitorSpec>(&monitor)) spec->validate();
  return normalize_from(eval_monitor(monitor, grid.nodes()));
}

NormalizedMonitor normalize_samples(std::span<const double> phi_samples) {
  std::vector<double> samples(phi_samples.begin(), phi_samples.end());
  // The samples get Fourier-interpolated downstream; check positivity of the
  // interpolant, not just of the nodes.
  const std::vector<double> dense =
      inverse_samples(forward_coeffs(samples), 4 * static_cast<int>(samples.size()));
  for (double v : dense)
    if (!(v > 0.0)) fail(errc::positivity, "monitor interpolant loses positivity");
  return normalize_from(std::move(samples));
}

}  // namespace equi
