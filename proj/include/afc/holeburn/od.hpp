#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "afc/holeburn/types.hpp"
#include "afc/spectral/hyperfine.hpp"

namespace afc::holeburn {

/// Renders the OD change caused by non-thermal populations onto a target
/// grid whose every `stride`-th point (starting at `first_index`) carries a
/// class. The rendering is a linear convolution with the nine shifted
/// unit-area Lorentzians, done with zero-padded FFTs. A positive
/// `kernel_half_span_hz` truncates the kernel (and the FFT length) to that
/// reach; zero keeps the whole target span.
class DeviationRenderer {
public:
    DeviationRenderer(const spectral::HyperfineScheme& scheme, const FrequencyGrid& target,
                      std::size_t n_classes, std::ptrdiff_t first_index, std::size_t stride,
                      double half_width_hz, double kernel_half_span_hz = 0.0);

    /// OD deviation at every target point.
    std::vector<double> render(const PopulationField& pops, const InhomogeneousLine& line) const;

private:
    FrequencyGrid target_;
    std::size_t n_classes_;
    std::ptrdiff_t first_index_;
    std::size_t stride_;
    std::size_t deposit_len_;
    std::size_t conv_len_;
    std::ptrdiff_t j_min_;
    std::size_t fft_len_;
    std::array<std::vector<std::complex<double>>, 3> kernel_spectra_;  ///< r2c half spectra
};

/// Returns the probe-grid index of the first class and the stride when the
/// class grid sits on the probe grid; stride 0 when it does not.
std::pair<std::ptrdiff_t, std::size_t> class_alignment(const FrequencyGrid& classes,
                                                       const FrequencyGrid& probe);

/// OD(nu) = line(nu) + sum_c line(nu_c) dnu_c sum_g (n_g - 1/3) sum_e f[g][e]
///          L(nu - nu_c - offset(g, e)),
/// with L the unit-area Lorentzian of FWHM `tooth_width_hz`. Thermal
/// populations reproduce the bare line exactly; classes outside the class
/// grid are thermal. Throws GuardError("grid") if the probe spacing exceeds
/// tooth_width / 4.
OpticalDepthProfile od_from_populations(const PopulationField& pops,
                                        const spectral::HyperfineScheme& scheme,
                                        const InhomogeneousLine& line,
                                        const FrequencyGrid& probe, double tooth_width_hz);

/// Same quantity by direct summation over classes (any class grid).
OpticalDepthProfile od_from_populations_direct(const PopulationField& pops,
                                               const spectral::HyperfineScheme& scheme,
                                               const InhomogeneousLine& line,
                                               const FrequencyGrid& probe,
                                               double tooth_width_hz);

}  // namespace afc::holeburn
