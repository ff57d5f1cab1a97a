#pragma once

// Hot loops of the hole-burning model. Each kernel has a serial reference
// and an OpenMP variant; both evaluate the same per-class expression, so the
// results are bit-identical for any thread count.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>

#include "afc/holeburn/types.hpp"

namespace afc::holeburn::kernels {

struct StepInputs {
    double class_first_hz = 0.0;
    double class_spacing_hz = 1.0;
    std::array<double, 9> offsets{};     ///< offset(g, e) at [3 g + e]
    std::array<double, 9> strengths{};   ///< f[g][e] at [3 g + e]
    std::array<double, 9> branching{};   ///< beta(e -> g) at [3 e + g]
    double half_width_hz = 0.5e6;
    double tooth_center_hz = 0.0;
    double tooth_spacing_hz = 80e6;
    int n_teeth_half = 0;
    std::span<const double> weights;     ///< tooth m at [m + n_teeth_half]
    int window = 16;
    double pump_rate = 0.0;
    double dt_s = 0.0;
    std::span<const double> attenuation; ///< on the class grid; empty = none
};

/// sum_m w_m L(nu_m - x) over the teeth nearest to x.
inline double tooth_sum(const StepInputs& in, double x) noexcept {
    const double u = (x - in.tooth_center_hz) / in.tooth_spacing_hz;
    const long nearest = std::lround(u);
    const long lo = std::max<long>(-in.n_teeth_half, nearest - in.window);
    const long hi = std::min<long>(in.n_teeth_half, nearest + in.window);
    const double inv_h = 1.0 / in.half_width_hz;
    double s = 0.0;
    for (long m = lo; m <= hi; ++m) {
        const double d = (in.tooth_center_hz + static_cast<double>(m) * in.tooth_spacing_hz - x) * inv_h;
        s += in.weights[static_cast<std::size_t>(m + in.n_teeth_half)] / (1.0 + d * d);
    }
    return s;
}

inline double attenuation_at(const StepInputs& in, double x) noexcept {
    if (in.attenuation.empty()) return 1.0;
    const double last = static_cast<double>(in.attenuation.size() - 1);
    double p = (x - in.class_first_hz) / in.class_spacing_hz;
    p = p < 0.0 ? 0.0 : (p > last ? last : p);
    const auto i = static_cast<std::size_t>(p);
    if (i + 1 >= in.attenuation.size()) return in.attenuation.back();
    const double t = p - static_cast<double>(i);
    return (1.0 - t) * in.attenuation[i] + t * in.attenuation[i + 1];
}

/// One exponential-transfer step for class `c`; returns max_g W_g.
inline double step_class(const StepInputs& in, std::size_t c, Triple& n) noexcept {
    const double nu = in.class_first_hz + static_cast<double>(c) * in.class_spacing_hz;
    std::array<double, 9> w{};
    std::array<double, 3> wg{};
    for (int k = 0; k < 9; ++k) {
        if (in.strengths[k] == 0.0 || in.pump_rate == 0.0) continue;
        const double x = nu + in.offsets[k];
        w[k] = in.pump_rate * in.strengths[k] * attenuation_at(in, x) * tooth_sum(in, x);
        wg[k / 3] += w[k];
    }
    Triple next{};
    std::array<double, 3> excited{};  // population sent to each excited state
    for (int g = 0; g < 3; ++g) {
        if (wg[g] == 0.0) {
            next[g] += n[g];
            continue;
        }
        const double x = wg[g] * in.dt_s;
        next[g] += n[g] * std::exp(-x);
        const double lost = -n[g] * std::expm1(-x);
        for (int e = 0; e < 3; ++e) excited[e] += lost * (w[3 * g + e] / wg[g]);
    }
    for (int e = 0; e < 3; ++e) {
        if (excited[e] == 0.0) continue;
        for (int g = 0; g < 3; ++g) next[g] += excited[e] * in.branching[3 * e + g];
    }
    n = next;
    return std::max({wg[0], wg[1], wg[2]});
}

/// Advances every class by one step; returns the largest W_g seen.
double burn_step_serial(const StepInputs& in, std::span<Triple> pops);
double burn_step_omp(const StepInputs& in, std::span<Triple> pops);

/// Direct evaluation of the burned-population OD deviation at each target
/// frequency: sum_c weight_c sum_g dn_g(c) sum_e f L_area(nu - nu_c - offset).
struct DeviationInputs {
    double class_first_hz = 0.0;
    double class_spacing_hz = 1.0;
    std::span<const std::array<double, 3>> class_deviation;  ///< weight * (n_g - 1/3)
    std::array<double, 9> offsets{};
    std::array<double, 9> strengths{};
    double half_width_hz = 0.5e6;
};

void deviation_direct_serial(const DeviationInputs& in, const FrequencyGrid& target,
                             std::span<double> out);
void deviation_direct_omp(const DeviationInputs& in, const FrequencyGrid& target,
                          std::span<double> out);

}  // namespace afc::holeburn::kernels
