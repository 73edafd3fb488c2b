#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "equi/evolution.hpp"
#include "equi/invariants.hpp"
#include "equi/monitor.hpp"

namespace equi {

/// Linearized-droplet zero-velocity state in polar coordinates:
/// r(eta) = 1 + eps_p P2(cos(eta - pi/4)), 0 < eps_p < 2.
struct DropletShape {
  double eps_p = 0.0;

  double r(double eta) const;
  double r_eta(double eta) const;
  double r_etaeta(double eta) const;
  double x(double eta) const { return r(eta) * std::cos(eta); }
  double y(double eta) const { return r(eta) * std::sin(eta); }
  double local_spacing(double eta) const;  // sqrt(r^2 + r_eta^2)
  double curvature(double eta) const;      // signed, counterclockwise
};

/// Two periodized rounded peakons as a graph y(x) on [0, 2pi]:
/// y = 2 sum_j e^{-sqrt((x-0.5+2pi j)^2+eps_r)} + 4 sum_j e^{-sqrt({2(x-4+2pi j)}^2+eps_r)}.
struct PeakonShape {
  double eps_r = 0.0;

  double y(double x) const;
  double y_x(double x) const;
  double y_xx(double x) const;
  double local_spacing(double x) const;  // sqrt(1 + y_x^2)
  double curvature(double x) const;
};

/// Analytic test curves: unit circle, droplet(eps_p), peakons(eps_r).
class ExampleCurve {
 public:
  static ExampleCurve circle();
  static ExampleCurve droplet(double eps_p);
  static ExampleCurve peakons(double eps_r);

  const std::string& name() const { return name_; }
  CurveKind kind() const;

  PlanarCurveSamples sample(int n) const;

  /// (x, y) and local spacing at an arbitrary parameter value.
  std::pair<double, double> point(double param) const;
  double local_spacing(double param) const;
  double curvature(double param) const;

  /// max |kappa| located by dense scan plus local refinement.
  double kappa_max() const;

  /// Arclength from parameter 0, machine accurate (Gauss-Legendre panels).
  std::vector<double> arclength_at(std::span<const double> params) const;
  double total_length() const;

 private:
  std::string name_;
  std::optional<DropletShape> droplet_;
  std::optional<PeakonShape> peakons_;
};

/// Spec'd entry point: sample an example at n equispaced parameter values.
/// params: droplet -> {eps_p}, peakons -> {eps_r}, circle -> {}.
PlanarCurveSamples make_example(const std::string& name, std::span<const double> params, int n);
ExampleCurve make_example_curve(const std::string& name, std::span<const double> params);

/// Relative L-infinity distance of the inverted invariants from the analytic
/// curve, on a dense set of arclength targets mapped from dense parameter
/// values; errors in x and y are each normalized by the coordinate's max
/// magnitude and the worse one is reported.
double arc_linf_error(const ArclengthInvariants& inv, const ExampleCurve& truth, int dense_n,
                      double eps = 1e-15);

struct InvariantsComparison {
  double l2_rel = 0.0;    // Plancherel metric over the common band, zero padded
  double linf_rel = 0.0;  // max pointwise distance of the inverted curves
  double length_mismatch = 0.0;  // |L_test - L_ref| / L_ref
  bool length_flagged = false;   // mismatch above 1e-8: lengths are part of the error
};

InvariantsComparison compare_invariants(const ArclengthInvariants& ref,
                                        const ArclengthInvariants& test, int dense_n);

enum class StudyKind { step1_convergence, rk4_convergence, refinement };

struct StudyParams {
  std::string example = "droplet";
  double eps_p = 2.0 / 7.0;
  double eps_r = 1e-2;
  std::vector<int> n_sweep;       // N1 (step1) or N3 (refinement)
  std::vector<double> dt_sweep;   // rk4
  std::string monitor = "phi1";
  int n2 = 2048;
  double dt = 1e-4;
  double eps = 1e-15;
  int n1_ref = 32768;             // full-accuracy reference (refinement)
  int nup_ref = 0;                // 0 = kind default
  int kmax_ref = 16384;
  int nup_restudy = 0;            // upsampling when re-extracting; 0 = nup_ref
  int rk4_n2 = 128;
  int dense_n = 4096;
  std::optional<SpacingState> spacing;  // reuse a previously evolved spacing
};

struct ErrorTable {
  std::string kind;
  std::string example;
  // Rows sorted by N. For rk4 studies N is the step count 1/dt and the
  // residual is reported in the err_arc_linf column.
  struct Row {
    int n = 0;
    double err_arc_linf = 0.0;
    double err_ref_l2 = 0.0;
    double err_ref_linf = 0.0;
  };
  std::vector<Row> rows;
};

ErrorTable run_study(StudyKind kind, const StudyParams& params);

}  // namespace equi
