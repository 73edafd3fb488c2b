#pragma once

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "equi/spectral.hpp"

namespace equi {

/// phi(s) = constant + sum of periodized Gaussians
///   A * sum_{j in Z} exp(-{b (s - c + 2 pi j)}^2),
/// with the image sum truncated once further images contribute below 1e-15
/// of the term amplitude.
struct GaussianTerm {
  double amplitude = 0.0;  // A > 0
  double center = 0.0;     // c in [0, 2pi)
  double width = 0.0;      // b > 0 (inner width; larger b = narrower bump)
};

struct MonitorSpec {
  double constant = 0.0;
  std::vector<GaussianTerm> terms;

  void validate() const;
};

/// Closed-form monitor base + amplitude cos(s); covers the slowly varying
/// builtin that a Gaussian superposition does not represent.
struct CosineMonitor {
  double base = 0.0;
  double amplitude = 0.0;
};

using Monitor = std::variant<MonitorSpec, CosineMonitor>;

std::vector<double> eval_monitor(const Monitor& monitor, std::span<const double> s);
double eval_monitor_at(const Monitor& monitor, double s);

/// Builtin presets: "phi0" (0.5 + 0.25 cos s), "phi1" (twin Gaussians of
/// amplitude 37, width 7.5 at 0 and pi), "phi2" (10/3 at 0.4 and 37/7.5 at
/// pi + 0.692).
Monitor monitor_preset(std::string_view name);
bool is_monitor_preset(std::string_view name);

/// Monitor after the L1-type normalization phi* = 2 pi phi / ||phi||_L1 on
/// the rescaled arclength interval [0, 2pi]: mean(phi*) = 1 exactly.
struct NormalizedMonitor {
  FourierSeries phi_star;
  double l1_norm = 0.0;    // trapezoidal ||phi||_L1 over [0, 2pi]
  double min_value = 0.0;  // sampled extrema of phi*
  double max_value = 0.0;
};

/// Samples the monitor on the uniform n-point grid of the rescaled arclength
/// and normalizes. n defaults to the evolve grid size in callers.
NormalizedMonitor normalize(const Monitor& monitor, int n);

/// Same from externally supplied arclength samples (uniform grid over one
/// period); positivity is re-checked on a 4x oversampled grid since the
/// samples get Fourier-interpolated downstream.
NormalizedMonitor normalize_samples(std::span<const double> phi_samples);

}  // namespace equi
