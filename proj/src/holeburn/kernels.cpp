#include "afc/holeburn/kernels.hpp"

#include "afc/spectral/line.hpp"

namespace afc::holeburn::kernels {

double burn_step_serial(const StepInputs& in, std::span<Triple> pops) {
    double max_w = 0.0;
    for (std::size_t c = 0; c < pops.size(); ++c) {
        const double w = step_class(in, c, pops[c]);
        max_w = w > max_w ? w : max_w;
    }
    return max_w;
}

double burn_step_omp(const StepInputs& in, std::span<Triple> pops) {
    double max_w = 0.0;
    const auto n = static_cast<std::ptrdiff_t>(pops.size());
#pragma omp parallel for schedule(static) reduction(max : max_w)
    for (std::ptrdiff_t c = 0; c < n; ++c) {
        const double w = step_class(in, static_cast<std::size_t>(c), pops[static_cast<std::size_t>(c)]);
        max_w = w > max_w ? w : max_w;
    }
    return max_w;
}

namespace {

inline double deviation_at(const DeviationInputs& in, double nu) noexcept {
    double acc = 0.0;
    for (std::size_t c = 0; c < in.class_deviation.size(); ++c) {
        const double nu_c = in.class_first_hz + static_cast<double>(c) * in.class_spacing_hz;
        const auto& dn = in.class_deviation[c];
        for (int k = 0; k < 9; ++k) {
            const double d = dn[k / 3];
            if (d == 0.0) continue;
            acc += d * in.strengths[k] *
                   spectral::lorentz_area(nu - nu_c - in.offsets[k], in.half_width_hz);
        }
    }
    return acc;
}

}  // namespace

void deviation_direct_serial(const DeviationInputs& in, const FrequencyGrid& target,
                             std::span<double> out) {
    for (std::size_t i = 0; i < target.size(); ++i) out[i] = deviation_at(in, target.frequency(i));
}

void deviation_direct_omp(const DeviationInputs& in, const FrequencyGrid& target,
                          std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(target.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = deviation_at(in, target.frequency(static_cast<std::size_t>(i)));
}

}  // namespace afc::holeburn::kernels
