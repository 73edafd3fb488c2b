// Independent reference computations for the test suites: brute-force
// summations, adaptive quadrature, and an adaptive embedded Runge-Kutta
// integrator. Nothing here shares code with the transform paths under test.
#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace oracles {

using cplx = std::complex<double>;

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

/// Adaptive Cash-Karp RK45 for a scalar ODE y' = f(x, y) from (x0, y0) to x1
/// with local relative tolerance tol.
double integrate_ode(const std::function<double(double, double)>& f, double x0, double y0,
                     double x1, double tol);

/// O(n^2) trapezoidal Fourier coefficients: c(k) = (1/n) sum f_j e^{-ik a_j}.
std::vector<cplx> direct_dft(std::span<const double> samples);

/// Brute-force exponential sums for the nonuniform transforms.
std::vector<cplx> direct_type1(std::span<const double> nodes, std::span<const cplx> weights,
                               int m);
std::vector<cplx> direct_type2(std::span<const double> nodes, std::span<const cplx> coeffs,
                               int m);

}  // namespace oracles
