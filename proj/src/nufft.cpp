#include "equi/nufft.hpp"

#include <cmath>

#include "equi/fft.hpp"

namespace equi {

namespace {

inline size_t bin(int k, int n) { return static_cast<size_t>(k >= 0 ? k : k + n); }

inline double wrap_two_pi(double x) {
  double y = std::fmod(x, two_pi);
  if (y < 0.0) y += two_pi;
  return y;
}

}  // namespace

NufftPlan make_nufft_plan(int modes, double eps_rel) {
  if (modes < 2 || modes % 2 != 0) fail(errc::plan, "nufft: mode count must be even and positive");
  if (!(eps_rel >= 1e-15 && eps_rel <= 1e-2))
    fail(errc::plan, "nufft: eps_rel outside [1e-15, 1e-2]");

  NufftPlan p;
  p.modes = modes;
  p.eps_rel = eps_rel;
  p.sigma = 2;
  p.fine_n = p.sigma * modes;
  // One cell beyond the classical -log10(eps)+1 rule: nodes sitting exactly on
  // a cell boundary otherwise overshoot the requested accuracy by ~2.5x.
  p.half_width = static_cast<int>(std::ceil(-std::log10(eps_rel) - 1e-9)) + 2;
  p.tau = (M_PI / (double(modes) * modes)) * p.half_width / (p.sigma * (p.sigma - 0.5));

  p.deconvolution.resize(static_cast<size_t>(modes));
  const double c = std::sqrt(M_PI / p.tau) / p.fine_n;
  for (int k = -modes / 2; k < modes / 2; ++k)
    p.deconvolution[static_cast<size_t>(k + modes / 2)] = c * std::exp(p.tau * double(k) * k);

  const int w = p.half_width;
  p.offset_kernel.resize(static_cast<size_t>(2 * w));
  const double hf = two_pi / p.fine_n;
  for (int l = -(w - 1); l <= w; ++l)
    p.offset_kernel[static_cast<size_t>(l + w - 1)] = std::exp(-(l * hf) * (l * hf) / (4.0 * p.tau));
  return p;
}

SpreadTable make_spread_table(const NufftPlan& plan, std::span<const double> nodes) {
  const int w = plan.half_width;
  const int width = 2 * w;
  const double hf = two_pi / plan.fine_n;

  SpreadTable t;
  t.fine_n = plan.fine_n;
  t.width = width;
  t.first_cell.resize(nodes.size());
  t.weights.resize(nodes.size() * static_cast<size_t>(width));

  for (size_t j = 0; j < nodes.size(); ++j) {
    const double x = wrap_two_pi(nodes[j]);
    int cell = static_cast<int>(x / hf);
    if (cell >= plan.fine_n) cell = plan.fine_n - 1;  // x just below 2pi
    const double d = x - cell * hf;                   // in [0, hf)

    // Fast Gaussian gridding: exp(-(d - l hf)^2/4tau)
    //   = exp(-d^2/4tau) * [exp(d hf/2tau)]^l * exp(-(l hf)^2/4tau).
    const double e1 = std::exp(-d * d / (4.0 * plan.tau));
    const double e2 = std::exp(d * hf / (2.0 * plan.tau));

    double* wt = &t.weights[j * static_cast<size_t>(width)];
    double p = e1;  // running e1 * e2^l, l = 0, 1, ...
    for (int l = 0; l <= w; ++l) {
      wt[l + w - 1] = p * plan.offset_kernel[static_cast<size_t>(l + w - 1)];
      p *= e2;
    }
    p = e1;
    const double inv_e2 = 1.0 / e2;
    for (int l = -1; l >= -(w - 1); --l) {
      p *= inv_e2;
      wt[l + w - 1] = p * plan.offset_kernel[static_cast<size_t>(l + w - 1)];
    }
    t.first_cell[j] = cell - (w - 1);
  }
  return t;
}

FourierSeries nufft_type1(const NufftPlan& plan, const SpreadTable& table,
                          std::span<const cplx> weights) {
  if (weights.size() != table.first_cell.size())
    fail(errc::plan, "nufft: node/weight count mismatch");
  FourierSeries out(plan.modes);
  if (weights.empty()) return out;

  const int nf = plan.fine_n;
  std::vector<cplx> fine(static_cast<size_t>(nf), cplx{0.0, 0.0});
  for (size_t j = 0; j < weights.size(); ++j) {
    const cplx f = weights[j];
    const double* wt = &table.weights[j * static_cast<size_t>(table.width)];
    int cell = table.first_cell[j];
    cell %= nf;
    if (cell < 0) cell += nf;
    for (int l = 0; l < table.width; ++l) {
      fine[static_cast<size_t>(cell)] += wt[l] * f;
      if (++cell == nf) cell = 0;
    }
  }

  fft::forward(nf, fine.data(), fine.data());
  for (int k = out.k_min(); k <= out.k_max(); ++k)
    out.at(k) = fine[bin(k, nf)] * plan.deconvolution[static_cast<size_t>(k + plan.modes / 2)];
  return out;
}

FourierSeries nufft_type1(const NufftPlan& plan, std::span<const double> nodes,
                          std::span<const cplx> weights) {
  return nufft_type1(plan, make_spread_table(plan, nodes), weights);
}

std::vector<cplx> nufft_type2(const NufftPlan& plan, const SpreadTable& table,
                              const FourierSeries& series) {
  if (series.modes() != plan.modes) fail(errc::plan, "nufft: series band does not match plan");
  std::vector<cplx> out(table.first_cell.size());
  if (out.empty()) return out;

  const int nf = plan.fine_n;
  std::vector<cplx> fine(static_cast<size_t>(nf), cplx{0.0, 0.0});
  for (int k = series.k_min(); k <= series.k_max(); ++k)
    fine[bin(k, nf)] = series.at(k) * plan.deconvolution[static_cast<size_t>(k + plan.modes / 2)];
  fft::backward(nf, fine.data(), fine.data());

  for (size_t j = 0; j < out.size(); ++j) {
    const double* wt = &table.weights[j * static_cast<size_t>(table.width)];
    int cell = table.first_cell[j];
    cell %= nf;
    if (cell < 0) cell += nf;
    cplx acc{0.0, 0.0};
    for (int l = 0; l < table.width; ++l) {
      acc += wt[l] * fine[static_cast<size_t>(cell)];
      if (++cell == nf) cell = 0;
    }
    out[j] = acc;
  }
  return out;
}

std::vector<cplx> nufft_type2(const NufftPlan& plan, std::span<const double> nodes,
                              const FourierSeries& series) {
  return nufft_type2(plan, make_spread_table(plan, nodes), series);
}

RealPairValues nufft_type2_real_pair(const NufftPlan& plan, const SpreadTable& table,
                                     std::span<const double> nodes, const FourierSeries& a,
                                     const FourierSeries& b) {
  const int m = plan.modes;
  FourierSeries packed(m);
  for (int k = -m / 2 + 1; k < m / 2; ++k) packed.at(k) = a.at(k) + cplx{0.0, 1.0} * b.at(k);
  const double nyq_a = a.at(-m / 2).real();
  const double nyq_b = b.at(-m / 2).real();

  const std::vector<cplx> v = nufft_type2(plan, table, packed);
  RealPairValues out;
  out.a.resize(v.size());
  out.b.resize(v.size());
  for (size_t j = 0; j < v.size(); ++j) {
    const double c = std::cos(0.5 * m * nodes[j]);
    out.a[j] = v[j].real() + nyq_a * c;
    out.b[j] = v[j].imag() + nyq_b * c;
  }
  return out;
}

RealPairValues direct_type2_real_pair(std::span<const double> nodes, const FourierSeries& a,
                                      const FourierSeries& b) {
  const int m = a.modes();
  if (b.modes() != m) fail(errc::band_mismatch, "pair evaluation requires equal bands");
  FourierSeries packed(m);
  for (int k = -m / 2 + 1; k < m / 2; ++k) packed.at(k) = a.at(k) + cplx{0.0, 1.0} * b.at(k);
  const double nyq_a = a.at(-m / 2).real();
  const double nyq_b = b.at(-m / 2).real();

  RealPairValues out;
  out.a.resize(nodes.size());
  out.b.resize(nodes.size());
  for (size_t j = 0; j < nodes.size(); ++j) {
    const cplx v = eval_series(packed, nodes[j]);
    const double c = std::cos(0.5 * m * nodes[j]);
    out.a[j] = v.real() + nyq_a * c;
    out.b[j] = v.imag() + nyq_b * c;
  }
  return out;
}

}  // namespace equi
