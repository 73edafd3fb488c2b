#pragma once

#include <span>
#include <vector>

#include "equi/spectral.hpp"

namespace equi {

/// Plan for Type-1/Type-2 transforms on the torus at a prescribed relative
/// accuracy: truncated-Gaussian spreading onto a 2x oversampled fine grid,
/// FFT, and division by the analytically known kernel symbol.
struct NufftPlan {
  int modes = 0;        // output/input mode count m (even), k = -m/2..m/2-1
  double eps_rel = 0;   // requested relative accuracy, [1e-15, 1e-2]
  int sigma = 2;        // oversampling factor
  int fine_n = 0;       // sigma * modes
  int half_width = 0;   // kernel half-width w in fine-grid cells
  double tau = 0;       // Gaussian variance (pi/m^2) * w / (sigma (sigma - 1/2))

  // Shared per-mode factor sqrt(pi/tau) e^{tau k^2} / fine_n, k ascending.
  std::vector<double> deconvolution;
  // exp(-(l h_f)^2 / 4 tau) for cell offsets l = -(w-1)..w.
  std::vector<double> offset_kernel;
};

NufftPlan make_nufft_plan(int modes, double eps_rel);

/// Kernel weights of a node set against the fine grid; reusable across
/// transforms that share the nodes (the weights do not depend on the data).
struct SpreadTable {
  int fine_n = 0;
  int width = 0;                 // 2w entries per node
  std::vector<int> first_cell;   // fine cell of offset l = -(w-1), unwrapped
  std::vector<double> weights;   // node-major, width per node
};

SpreadTable make_spread_table(const NufftPlan& plan, std::span<const double> nodes);

/// Type-1: f_hat(k) ~= sum_j w_j e^{-i k x_j}, k = -m/2..m/2-1, with
/// max_k error <= eps_rel * sum_j |w_j|. Nodes are reduced modulo 2pi.
FourierSeries nufft_type1(const NufftPlan& plan, const SpreadTable& table,
                          std::span<const cplx> weights);
FourierSeries nufft_type1(const NufftPlan& plan, std::span<const double> nodes,
                          std::span<const cplx> weights);

/// Type-2: f_j ~= sum_k c_k e^{i k x_j} with relative error <= eps_rel
/// against sum_k |c_k|.
std::vector<cplx> nufft_type2(const NufftPlan& plan, const SpreadTable& table,
                              const FourierSeries& series);
std::vector<cplx> nufft_type2(const NufftPlan& plan, std::span<const double> nodes,
                              const FourierSeries& series);

/// Values of two real (conjugate-symmetric) series at the same nodes in one
/// complex Type-2 transform, packed as a + i b. The unpaired Nyquist mode is
/// applied in its symmetric cosine form so the two outputs do not leak into
/// each other.
struct RealPairValues {
  std::vector<double> a, b;
};
RealPairValues nufft_type2_real_pair(const NufftPlan& plan, const SpreadTable& table,
                                     std::span<const double> nodes, const FourierSeries& a,
                                     const FourierSeries& b);

/// Direct-summation evaluation of the same pair (O(N m)); the production path
/// for small grids where the kernel floor of the fast transform would
/// dominate.
RealPairValues direct_type2_real_pair(std::span<const double> nodes, const FourierSeries& a,
                                      const FourierSeries& b);

}  // namespace equi
