#include "equi/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace equi::fft {
namespace {

// One plan pair per transform size, executing on plan-owned aligned buffers.
// Data is copied in and out; the copies are negligible next to the transform.
struct PlanPair {
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  int n = 0;

  explicit PlanPair(int n_) : n(n_) {
    buf = fftw_alloc_complex(static_cast<size_t>(n));
    fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_MEASURE);
    bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_MEASURE);
  }
  ~PlanPair() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;
};

std::mutex g_mutex;
std::map<int, std::unique_ptr<PlanPair>>& cache() {
  static std::map<int, std::unique_ptr<PlanPair>> c;
  return c;
}

void execute(int n, const std::complex<double>* in, std::complex<double>* out, bool forward_dir) {
  std::lock_guard<std::mutex> lock(g_mutex);
  auto& slot = cache()[n];
  if (!slot) slot = std::make_unique<PlanPair>(n);
  std::memcpy(slot->buf, in, sizeof(fftw_complex) * static_cast<size_t>(n));
  fftw_execute(forward_dir ? slot->fwd : slot->bwd);
  std::memcpy(out, slot->buf, sizeof(fftw_complex) * static_cast<size_t>(n));
}

}  // namespace

void forward(int n, const std::complex<double>* in, std::complex<double>* out) {
  execute(n, in, out, true);
}

void backward(int n, const std::complex<double>* in, std::complex<double>* out) {
  execute(n, in, out, false);
}

}  // namespace equi::fft
