#include "equi/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "equi/fft.hpp"

namespace equi {

namespace {

// FFT bin of signed wavenumber k on a length-n transform.
inline size_t bin(int k, int n) { return static_cast<size_t>(k >= 0 ? k : k + n); }

const char* kEvenGridMsg = "grid size must be even and >= 4";

}  // namespace

void UniformGrid::validate(int n) {
  if (n < 4 || n % 2 != 0) fail(errc::invalid_grid, kEvenGridMsg);
}

std::vector<double> UniformGrid::nodes() const {
  std::vector<double> a(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) a[static_cast<size_t>(j)] = node(j);
  return a;
}

FourierSeries::FourierSeries(int m) : m_(m), c_(static_cast<size_t>(m)) {
  if (m < 2 || m % 2 != 0) fail(errc::invalid_grid, "mode count must be even and positive");
}

FourierSeries::FourierSeries(int m, std::vector<cplx> coeffs) : m_(m), c_(std::move(coeffs)) {
  if (m < 2 || m % 2 != 0) fail(errc::invalid_grid, "mode count must be even and positive");
  if (c_.size() != static_cast<size_t>(m)) fail(errc::invalid_grid, "coefficient count mismatch");
}

FourierSeries FourierSeries::pad_to(int m2) const {
  if (m2 == m_) return *this;
  if (m2 < m_ || m2 % 2 != 0) fail(errc::downsample_forbidden, "band can only be widened");
  FourierSeries out(m2);
  for (int k = k_min(); k <= k_max(); ++k) out.at(k) = at(k);
  return out;
}

double FourierSeries::tail_ratio() const {
  double peak = 0.0, tail = 0.0;
  const int cutoff = m_ / 2 - std::max(1, m_ / 8);
  for (int k = k_min(); k <= k_max(); ++k) {
    const double a = std::abs(at(k));
    peak = std::max(peak, a);
    if (std::abs(k) >= cutoff) tail = std::max(tail, a);
  }
  return peak > 0.0 ? tail / peak : 0.0;
}

double FourierSeries::conj_symmetry_defect() const {
  double peak = 0.0, defect = 0.0;
  for (int k = k_min(); k <= k_max(); ++k) peak = std::max(peak, std::abs(at(k)));
  for (int k = 1; k <= k_max(); ++k) defect = std::max(defect, std::abs(at(-k) - std::conj(at(k))));
  defect = std::max(defect, std::abs(at(0).imag()));
  return peak > 0.0 ? defect / peak : 0.0;
}

FourierSeries operator+(const FourierSeries& a, const FourierSeries& b) {
  const int m = std::max(a.modes(), b.modes());
  FourierSeries pa = a.pad_to(m), pb = b.pad_to(m);
  for (int k = pa.k_min(); k <= pa.k_max(); ++k) pa.at(k) += pb.at(k);
  return pa;
}

FourierSeries operator-(const FourierSeries& a, const FourierSeries& b) {
  const int m = std::max(a.modes(), b.modes());
  FourierSeries pa = a.pad_to(m), pb = b.pad_to(m);
  for (int k = pa.k_min(); k <= pa.k_max(); ++k) pa.at(k) -= pb.at(k);
  return pa;
}

FourierSeries operator*(double s, const FourierSeries& a) {
  FourierSeries out = a;
  for (auto& c : out.coeffs()) c *= s;
  return out;
}

FourierSeries forward_coeffs(std::span<const double> samples) {
  const int n = static_cast<int>(samples.size());
  UniformGrid::validate(n);
  for (double v : samples)
    if (!std::isfinite(v)) fail(errc::invalid_grid, "samples must be finite");

  std::vector<cplx> buf(samples.begin(), samples.end());
  fft::forward(n, buf.data(), buf.data());

  FourierSeries out(n);
  const double scale = 1.0 / n;
  for (int k = out.k_min(); k <= out.k_max(); ++k) out.at(k) = buf[bin(k, n)] * scale;
  return out;
}

std::vector<cplx> inverse_samples_complex(const FourierSeries& f, int n_out) {
  UniformGrid::validate(n_out);
  if (n_out < f.modes())
    fail(errc::downsample_forbidden,
         "inverse_samples: target grid smaller than the mode count would alias");
  std::vector<cplx> buf(static_cast<size_t>(n_out), cplx{0.0, 0.0});
  for (int k = f.k_min(); k <= f.k_max(); ++k) buf[bin(k, n_out)] += f.at(k);
  fft::backward(n_out, buf.data(), buf.data());
  return buf;
}

std::vector<double> inverse_samples(const FourierSeries& f, int n_out) {
  const std::vector<cplx> buf = inverse_samples_complex(f, n_out);
  std::vector<double> out(buf.size());
  for (size_t j = 0; j < buf.size(); ++j) out[j] = buf[j].real();
  return out;
}

FourierSeries differentiate(const FourierSeries& f) {
  FourierSeries out(f.modes());
  for (int k = f.k_min() + 1; k <= f.k_max(); ++k) out.at(k) = cplx{0.0, double(k)} * f.at(k);
  out.at(f.k_min()) = 0.0;  // Nyquist derivative zeroed
  return out;
}

SemiPeriodicField antiderivative(const FourierSeries& f) {
  const int m = f.modes();
  FourierSeries q(m), r(m);
  r.at(0) = f.at(0);
  cplx at_zero{0.0, 0.0};
  for (int k = f.k_min(); k <= f.k_max(); ++k) {
    if (k == 0) continue;
    q.at(k) = f.at(k) / cplx{0.0, double(k)};
    at_zero += q.at(k);
  }
  q.at(0) = -at_zero;  // pins F(0) = 0
  return SemiPeriodicField{std::move(q), std::move(r)};
}

cplx eval_series(const FourierSeries& f, double x) {
  // Horner over ascending k with a final twist by e^{i k_min x}.
  const cplx z = std::polar(1.0, x);
  cplx acc{0.0, 0.0};
  for (int k = f.k_max(); k >= f.k_min(); --k) acc = acc * z + f.at(k);
  return acc * std::polar(1.0, f.k_min() * x);
}

SemiPeriodicField SemiPeriodicField::derivative() const {
  return SemiPeriodicField{differentiate(periodic) + slope, differentiate(slope)};
}

double SemiPeriodicField::eval(double x) const {
  return eval_series(periodic, x).real() + x * eval_series(slope, x).real();
}

std::vector<double> SemiPeriodicField::sample(int n) const {
  std::vector<double> q = inverse_samples(periodic, n);
  const UniformGrid grid(n);
  bool constant_slope = true;
  for (int k = slope.k_min(); k <= slope.k_max() && constant_slope; ++k)
    if (k != 0 && slope.at(k) != cplx{0.0, 0.0}) constant_slope = false;
  if (constant_slope) {
    const double r0 = slope.mean();
    if (r0 != 0.0)
      for (int j = 0; j < n; ++j) q[static_cast<size_t>(j)] += grid.node(j) * r0;
    return q;
  }
  const std::vector<double> r = inverse_samples(slope, n);
  for (int j = 0; j < n; ++j) q[static_cast<size_t>(j)] += grid.node(j) * r[static_cast<size_t>(j)];
  return q;
}

const char* to_string(errc c) {
  switch (c) {
    case errc::invalid_grid: return "invalid-grid";
    case errc::downsample_forbidden: return "downsample-forbidden";
    case errc::plan: return "plan";
    case errc::degenerate_curve: return "degenerate-curve";
    case errc::invalid_spec: return "invalid-spec";
    case errc::positivity: return "positivity";
    case errc::undersampled_exponential: return "undersampled-exponential";
    case errc::resolution: return "resolution";
    case errc::under_resolution: return "under-resolution";
    case errc::monotonicity_loss: return "monotonicity-loss";
    case errc::parameter: return "parameter";
    case errc::band_mismatch: return "band-mismatch";
    case errc::config: return "config";
    case errc::io: return "io";
  }
  return "unknown";
}

}  // namespace equi
