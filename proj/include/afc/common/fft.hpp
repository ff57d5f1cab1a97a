#pragma once

#include <complex>
#include <span>
#include <vector>

namespace afc::fft {

using cplx = std::complex<double>;

/// Unnormalized forward DFT: X[k] = sum_n x[n] exp(-2 pi i k n / N).
std::vector<cplx> forward(std::span<const cplx> x);

/// Normalized inverse DFT: x[n] = (1/N) sum_k X[k] exp(+2 pi i k n / N).
std::vector<cplx> inverse(std::span<const cplx> x);

/// Forward DFT of a real sequence zero-padded to `n`; returns the n/2 + 1
/// non-negative-frequency bins.
std::vector<cplx> forward_real(std::span<const double> x, std::size_t n);

/// Inverse of forward_real (normalized); returns n real samples.
std::vector<double> inverse_real(std::span<const cplx> half, std::size_t n);

/// Linear (non-circular) convolution of real sequences, truncated to the
/// first `out_size` samples of the full result. Uses zero padding.
std::vector<double> convolve_real(std::span<const double> a, std::span<const double> b,
                                  std::size_t out_size);

}  // namespace afc::fft
