#include "afc/holeburn/od.hpp"

#include <algorithm>
#include <cmath>

#include "afc/common/error.hpp"
#include "afc/common/fft.hpp"
#include "afc/holeburn/kernels.hpp"

namespace afc::holeburn {

namespace {

std::size_t pow2_at_least(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::vector<std::array<double, 3>> class_deviation(const PopulationField& pops,
                                                   const InhomogeneousLine& line) {
    const auto& grid = pops.class_grid;
    std::vector<std::array<double, 3>> dev(pops.pops.size());
    for (std::size_t c = 0; c < dev.size(); ++c) {
        const double weight = line.od_at(grid.frequency(c)) * grid.spacing();
        for (int g = 0; g < 3; ++g) dev[c][g] = weight * (pops.pops[c][g] - 1.0 / 3.0);
    }
    return dev;
}

void check_probe(const FrequencyGrid& probe, double tooth_width_hz) {
    if (!(tooth_width_hz > 0.0)) throw GuardError("grid", "tooth width must be positive");
    if (probe.spacing() > 0.25 * tooth_width_hz + 1e-9 * tooth_width_hz)
        throw GuardError("grid", "probe grid spacing under-resolves the tooth width");
}

OpticalDepthProfile finish(const FrequencyGrid& probe, const InhomogeneousLine& line,
                           const std::vector<double>& deviation) {
    OpticalDepthProfile p{probe, std::vector<double>(probe.size())};
    double peak = 0.0;
    for (std::size_t i = 0; i < probe.size(); ++i) {
        p.od[i] = line.od_at(probe.frequency(i)) + deviation[i];
        peak = std::max(peak, std::abs(p.od[i]));
    }
    // FFT round-off can leave values a few ulps below zero.
    const double floor = -1e-9 * std::max(peak, 1.0);
    for (double& v : p.od) {
        if (v < floor) throw GuardError("profile", "rendered OD is negative");
        if (v < 0.0) v = 0.0;
    }
    return p;
}

}  // namespace

DeviationRenderer::DeviationRenderer(const spectral::HyperfineScheme& scheme,
                                     const FrequencyGrid& target, std::size_t n_classes,
                                     std::ptrdiff_t first_index, std::size_t stride,
                                     double half_width_hz, double kernel_half_span_hz)
  : target_(target), n_classes_(n_classes), first_index_(first_index), stride_(stride) {
    if (n_classes == 0 || stride == 0) throw GuardError("grid", "empty class grid");
    deposit_len_ = (n_classes - 1) * stride + 1;
    const double dx = target.spacing();
    std::size_t kernel_len = 0;
    if (kernel_half_span_hz > 0.0) {
        const auto kh = static_cast<std::ptrdiff_t>(std::ceil(kernel_half_span_hz / dx));
        kernel_len = static_cast<std::size_t>(2 * kh + 1);
        j_min_ = -kh;
    } else {
        kernel_len = target.size() + deposit_len_ - 1;
        j_min_ = -first_index - static_cast<std::ptrdiff_t>(deposit_len_ - 1);
    }
    conv_len_ = deposit_len_ + kernel_len - 1;
    fft_len_ = pow2_at_least(conv_len_);
    // Kernel sample s is the displacement j = s + j_min in target steps.
    const auto j_min = j_min_;
    for (int g = 0; g < 3; ++g) {
        std::vector<double> k(kernel_len);
        for (std::size_t s = 0; s < kernel_len; ++s) {
            const double x = static_cast<double>(static_cast<std::ptrdiff_t>(s) + j_min) * dx;
            double v = 0.0;
            for (int e = 0; e < 3; ++e)
                v += scheme.strength[g][e] * spectral::lorentz_area(x - scheme.offset(g, e), half_width_hz);
            k[s] = v;
        }
        kernel_spectra_[g] = fft::forward_real(k, fft_len_);
    }
}

std::vector<double> DeviationRenderer::render(const PopulationField& pops,
                                              const InhomogeneousLine& line) const {
    if (pops.pops.size() != n_classes_) throw GuardError("grid", "class count mismatch");
    const auto dev = class_deviation(pops, line);
    std::vector<std::complex<double>> acc(fft_len_ / 2 + 1);
    std::vector<double> d(deposit_len_);
    for (int g = 0; g < 3; ++g) {
        bool any = false;
        for (std::size_t c = 0; c < n_classes_; ++c) {
            d[c * stride_] = dev[c][g];
            any = any || dev[c][g] != 0.0;
        }
        if (!any) continue;
        const auto spec = fft::forward_real(d, fft_len_);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += spec[k] * kernel_spectra_[g][k];
    }
    const auto full = fft::inverse_real(acc, fft_len_);
    // Sample n of the linear convolution is displacement i - first_index - j_min.
    std::vector<double> out(target_.size(), 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto n = static_cast<std::ptrdiff_t>(i) - first_index_ - j_min_;
        if (n >= 0 && n < static_cast<std::ptrdiff_t>(conv_len_)) out[i] = full[static_cast<std::size_t>(n)];
    }
    return out;
}

std::pair<std::ptrdiff_t, std::size_t> class_alignment(const FrequencyGrid& classes,
                                                       const FrequencyGrid& probe) {
    const double ratio = classes.spacing() / probe.spacing();
    const double stride = std::round(ratio);
    if (stride < 1.0 || std::abs(ratio - stride) > 1e-9 * stride) return {0, 0};
    const double p0 = probe.position(classes.first());
    const double i0 = std::round(p0);
    if (std::abs(p0 - i0) > 1e-6) return {0, 0};
    return {static_cast<std::ptrdiff_t>(i0), static_cast<std::size_t>(stride)};
}

OpticalDepthProfile od_from_populations(const PopulationField& pops,
                                        const spectral::HyperfineScheme& scheme,
                                        const InhomogeneousLine& line,
                                        const FrequencyGrid& probe, double tooth_width_hz) {
    check_probe(probe, tooth_width_hz);
    pops.validate(1e-9);
    scheme.validate();
    line.validate();
    const auto [first, stride] = class_alignment(pops.class_grid, probe);
    if (stride == 0) return od_from_populations_direct(pops, scheme, line, probe, tooth_width_hz);
    DeviationRenderer renderer(scheme, probe, pops.pops.size(), first, stride, 0.5 * tooth_width_hz);
    return finish(probe, line, renderer.render(pops, line));
}

OpticalDepthProfile od_from_populations_direct(const PopulationField& pops,
                                               const spectral::HyperfineScheme& scheme,
                                               const InhomogeneousLine& line,
                                               const FrequencyGrid& probe,
                                               double tooth_width_hz) {
    check_probe(probe, tooth_width_hz);
    pops.validate(1e-9);
    const auto dev = class_deviation(pops, line);
    kernels::DeviationInputs in;
    in.class_first_hz = pops.class_grid.first();
    in.class_spacing_hz = pops.class_grid.spacing();
    in.class_deviation = dev;
    in.half_width_hz = 0.5 * tooth_width_hz;
    for (int g = 0; g < 3; ++g)
        for (int e = 0; e < 3; ++e) {
            in.offsets[3 * g + e] = scheme.offset(g, e);
            in.strengths[3 * g + e] = scheme.strength[g][e];
        }
    std::vector<double> out(probe.size());
    kernels::deviation_direct_omp(in, probe, out);
    return finish(probe, line, out);
}

}  // namespace afc::holeburn
