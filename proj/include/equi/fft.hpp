#pragma once

#include <complex>

namespace equi::fft {

// Unnormalized complex transforms backed by cached FFTW plans, one pair per
// size. forward uses e^{-ikx}, backward e^{+ikx}. in/out may alias.
void forward(int n, const std::complex<double>* in, std::complex<double>* out);
void backward(int n, const std::complex<double>* in, std::complex<double>* out);

}  // namespace equi::fft
