#pragma once

#include <complex>
#include <span>
#include <vector>

#include "equi/errors.hpp"

namespace equi {

using cplx = std::complex<double>;

inline constexpr double two_pi = 6.28318530717958647692528676655900577;

/// Equispaced periodic grid on [0, 2pi): nodes alpha_j = j*2pi/n, j = 0..n-1.
/// The node 2pi is excluded (periodic identification). n must be even and >= 4
/// so the symmetric wavenumber range -n/2..n/2-1 is well defined.
struct UniformGrid {
  int n = 0;

  explicit UniformGrid(int n_) : n(n_) { validate(n_); }
  double node(int j) const { return two_pi * static_cast<double>(j) / n; }
  std::vector<double> nodes() const;
  static void validate(int n);
};

/// Truncated Fourier series of a 2pi-periodic function, modes k = -m/2..m/2-1.
class FourierSeries {
 public:
  FourierSeries() = default;
  explicit FourierSeries(int m);
  FourierSeries(int m, std::vector<cplx> coeffs);

  int modes() const { return m_; }
  int k_min() const { return -m_ / 2; }
  int k_max() const { return m_ / 2 - 1; }

  cplx& at(int k) { return c_[static_cast<size_t>(k + m_ / 2)]; }
  const cplx& at(int k) const { return c_[static_cast<size_t>(k + m_ / 2)]; }
  bool has(int k) const { return k >= k_min() && k <= k_max(); }

  std::span<const cplx> coeffs() const { return c_; }
  std::span<cplx> coeffs() { return c_; }

  /// Mean value of the represented (real) function.
  double mean() const { return at(0).real(); }

  /// Same series on the wider band -m2/2..m2/2-1 (zero padding); m2 >= m.
  FourierSeries pad_to(int m2) const;

  /// Largest |c_k| over the top eighth of the band, relative to the overall
  /// largest |c_k|; a cheap resolution indicator for sampled data.
  double tail_ratio() const;

  /// Largest deviation from c(-k) = conj(c(k)), relative to max |c_k|.
  double conj_symmetry_defect() const;

  friend FourierSeries operator+(const FourierSeries& a, const FourierSeries& b);
  friend FourierSeries operator-(const FourierSeries& a, const FourierSeries& b);
  friend FourierSeries operator*(double s, const FourierSeries& a);

 private:
  int m_ = 0;
  std::vector<cplx> c_;
};

struct SemiPeriodicField;

/// Trapezoidal Fourier coefficients of real samples on UniformGrid(n):
/// c(k) = (1/n) sum_j f_j exp(-i k alpha_j), k = -n/2..n/2-1.
FourierSeries forward_coeffs(std::span<const double> samples);

/// Values of the truncated series at the n_out equispaced nodes. n_out >= m
/// (higher modes are zero padded); downsampling would alias silently and is
/// rejected.
std::vector<double> inverse_samples(const FourierSeries& f, int n_out);
std::vector<cplx> inverse_samples_complex(const FourierSeries& f, int n_out);

/// Term-by-term derivative: c_k -> ik c_k with the Nyquist mode k = -m/2
/// zeroed (standard real-data convention).
FourierSeries differentiate(const FourierSeries& f);

/// Anti-derivative with base point 0:
///   F(x) = c(0) x + sum_{k != 0} c(k)/(ik) (e^{ikx} - 1),
/// returned as slope (the constant series c(0)) plus periodic part; F(0) = 0.
SemiPeriodicField antiderivative(const FourierSeries& f);

/// Direct summation of the series at an arbitrary point (O(m); diagnostics
/// and small-n evaluation paths).
cplx eval_series(const FourierSeries& f, double x);

/// F(x) = q(x) + x r(x) with q, r periodic. Closed under d/dx and under
/// multiplication by purely periodic functions; houses the non-periodic
/// fields that arise on the open interpolated curve.
struct SemiPeriodicField {
  FourierSeries periodic;  // q
  FourierSeries slope;     // r

  SemiPeriodicField derivative() const;          // (q' + r) + x r'
  double eval(double x) const;                   // direct summation
  std::vector<double> sample(int n) const;       // on UniformGrid(n)
};

}  // namespace equi
