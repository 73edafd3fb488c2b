#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "equi/geometry.hpp"
#include "equi/validation.hpp"

using namespace equi;

TEST_CASE("unit circle geometry") {
  const PlanarCurveSamples circle = ExampleCurve::circle().sample(64);
  const CurveGeometry g = compute_geometry(circle);

  CHECK(std::abs(g.L - two_pi) < 1e-13);
  for (int j = 0; j < 64; ++j) {
    const size_t i = static_cast<size_t>(j);
    CHECK(std::abs(g.s_alpha[i] - 1.0) < 1e-13);
    CHECK(std::abs(g.kappa[i] - 1.0) < 1e-12);
    const double theta = g.theta.eval(circle.grid.node(j));
    CHECK(std::abs(theta - (circle.grid.node(j) + M_PI / 2.0)) < 1e-13);
  }
  CHECK(std::abs(g.turning - 1.0) < 1e-13);
}

TEST_CASE("ellipse curvature matches the closed form") {
  const int n = 256;
  UniformGrid grid(n);
  PlanarCurveSamples ellipse{grid, {}, {}, CurveKind::closed};
  ellipse.x.resize(n);
  ellipse.y.resize(n);
  for (int j = 0; j < n; ++j) {
    ellipse.x[static_cast<size_t>(j)] = 2.0 * std::cos(grid.node(j));
    ellipse.y[static_cast<size_t>(j)] = std::sin(grid.node(j));
  }
  const CurveGeometry g = compute_geometry(ellipse);
  for (int j = 0; j < n; ++j) {
    const double a = grid.node(j);
    const double s = std::sin(a), c = std::cos(a);
    const double expected = 2.0 / std::pow(4.0 * s * s + c * c, 1.5);
    CHECK(std::abs(g.kappa[static_cast<size_t>(j)] - expected) < 1e-10);
  }
}

TEST_CASE("droplet geometry self-converges") {
  const ExampleCurve droplet = ExampleCurve::droplet(2.0 / 7.0);
  const CurveGeometry coarse = compute_geometry(droplet.sample(256));
  const CurveGeometry fine = compute_geometry(droplet.sample(4096));
  CHECK(std::abs(coarse.L - fine.L) / fine.L < 1e-12);

  // kappa self-agreement at shared nodes (4096 = 16 * 256) is limited by the
  // k^2 roundoff amplification of double spectral differentiation on the FINE
  // grid (~1e-9), not by the coarse computation: the coarse kappa is within
  // 4e-12 of the polar closed form (checked below at 1e-10).
  double worst = 0.0, scale = 0.0;
  for (int j = 0; j < 256; ++j) {
    worst = std::max(worst, std::abs(coarse.kappa[static_cast<size_t>(j)] -
                                     fine.kappa[static_cast<size_t>(16 * j)]));
    scale = std::max(scale, std::abs(fine.kappa[static_cast<size_t>(16 * j)]));
  }
  CHECK(worst / scale < 2e-9);
}

TEST_CASE("droplet kappa against the polar closed form") {
  const ExampleCurve droplet = ExampleCurve::droplet(2.0 / 7.0);
  const PlanarCurveSamples curve = droplet.sample(256);
  const CurveGeometry g = compute_geometry(curve);
  for (int j = 0; j < 256; ++j)
    CHECK(std::abs(g.kappa[static_cast<size_t>(j)] - droplet.curvature(curve.grid.node(j))) < 1e-10);
}

TEST_CASE("unit vectors are orthonormal and Frenet-consistent") {
  const ExampleCurve droplet = ExampleCurve::droplet(2.0 / 7.0);
  const PlanarCurveSamples curve = droplet.sample(512);
  const CurveGeometry g = compute_geometry(curve);
  const UnitVectors v = unit_vectors(g);

  for (size_t i = 0; i < v.tx.size(); ++i) {
    CHECK(std::abs(std::hypot(v.tx[i], v.ty[i]) - 1.0) < 1e-13);
    CHECK(std::abs(std::hypot(v.nx[i], v.ny[i]) - 1.0) < 1e-13);
    CHECK(std::abs(v.tx[i] * v.nx[i] + v.ty[i] * v.ny[i]) < 1e-13);
  }

  // Frenet residual t_s - kappa n via spectral differentiation of t.
  const int n = curve.grid.n;
  const auto dtx = inverse_samples(differentiate(forward_coeffs(v.tx)), n);
  const auto dty = inverse_samples(differentiate(forward_coeffs(v.ty)), n);
  for (int j = 0; j < n; ++j) {
    const size_t i = static_cast<size_t>(j);
    CHECK(std::abs(dtx[i] / g.s_alpha[i] - g.kappa[i] * v.nx[i]) < 1e-8);
    CHECK(std::abs(dty[i] / g.s_alpha[i] - g.kappa[i] * v.ny[i]) < 1e-8);
  }
}

TEST_CASE("peakons Frenet residual at high resolution") {
  const ExampleCurve peakons = ExampleCurve::peakons(1e-2);
  const PlanarCurveSamples curve = peakons.sample(8192);
  const CurveGeometry g = compute_geometry(curve);
  const UnitVectors v = unit_vectors(g);
  const int n = curve.grid.n;
  const auto dtx = inverse_samples(differentiate(forward_coeffs(v.tx)), n);
  const auto dty = inverse_samples(differentiate(forward_coeffs(v.ty)), n);
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const size_t i = static_cast<size_t>(j);
    worst = std::max(worst, std::abs(dtx[i] / g.s_alpha[i] - g.kappa[i] * v.nx[i]));
    worst = std::max(worst, std::abs(dty[i] / g.s_alpha[i] - g.kappa[i] * v.ny[i]));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("turning number of the droplet family") {
  for (double eps_p : {0.1, 2.0 / 7.0, 1.0, 1.7}) {
    const int n = eps_p > 1.5 ? 4096 : 512;
    const CurveGeometry g = compute_geometry(ExampleCurve::droplet(eps_p).sample(n));
    CHECK(std::abs(g.turning - 1.0) < 1e-10);
  }
}

TEST_CASE("horizontally periodic turning number is zero") {
  const CurveGeometry g = compute_geometry(ExampleCurve::peakons(1e-2).sample(8192));
  CHECK(std::abs(g.turning) < 1e-10);
}

TEST_CASE("length is invariant under phase-shifted sampling") {
  const ExampleCurve droplet = ExampleCurve::droplet(2.0 / 7.0);
  const int n = 512;
  UniformGrid grid(n);
  PlanarCurveSamples shifted{grid, {}, {}, CurveKind::closed};
  shifted.x.resize(n);
  shifted.y.resize(n);
  const double phase = 0.7321;
  for (int j = 0; j < n; ++j) {
    const auto [px, py] = droplet.point(grid.node(j) + phase);
    shifted.x[static_cast<size_t>(j)] = px;
    shifted.y[static_cast<size_t>(j)] = py;
  }
  const double l1 = compute_geometry(droplet.sample(n)).L;
  const double l2 = compute_geometry(shifted).L;
  CHECK(std::abs(l1 - l2) / l1 < 1e-12);
}

TEST_CASE("arclength map is monotone and anchored at zero") {
  const CurveGeometry g = compute_geometry(ExampleCurve::droplet(1.0).sample(1024));
  CHECK(g.s_of_alpha[0] == doctest::Approx(0.0).epsilon(1e-14));
  for (size_t i = 1; i < g.s_of_alpha.size(); ++i) CHECK(g.s_of_alpha[i] > g.s_of_alpha[i - 1]);
}

TEST_CASE("degenerate curve is rejected") {
  UniformGrid grid(16);
  PlanarCurveSamples bad{grid, std::vector<double>(16, 1.0), std::vector<double>(16, 0.0),
                         CurveKind::closed};
  CHECK_THROWS_AS(compute_geometry(bad), Error);
}

TEST_CASE("resolution warning on under-resolved input") {
  // The peakon graph has a wide spectrum; a coarse grid leaves a fat
  // coefficient tail. (The droplet's coordinates are band-limited to |k| <= 3
  // and never trip the input-tail check.)
  const CurveGeometry g = compute_geometry(ExampleCurve::peakons(1e-2).sample(128));
  CHECK(g.resolution_warning);
  const CurveGeometry fine = compute_geometry(ExampleCurve::peakons(1e-2).sample(8192));
  CHECK_FALSE(fine.resolution_warning);
}
