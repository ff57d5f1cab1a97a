#include "afc/holeburn/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "afc/common/error.hpp"

namespace afc::holeburn {

namespace {

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }
bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

void BurnComb::validate() const {
    if (!finite_positive(rep_rate_hz)) throw ConfigError("comb.rep_rate_hz must be > 0");
    if (n_teeth_half < 0) throw ConfigError("comb.n_teeth_half must be >= 0");
    if (!std::isfinite(center_offset_hz)) throw ConfigError("comb.center_offset_hz must be finite");
    if (!finite_positive(envelope_fwhm_hz)) throw ConfigError("comb.envelope_fwhm_hz must be > 0");
    if (!finite_positive(tooth_width_hz)) throw ConfigError("comb.tooth_width_hz must be > 0");
}

double BurnComb::tooth_weight(int m) const noexcept {
    const double x = static_cast<double>(m) * rep_rate_hz / envelope_fwhm_hz;
    return std::exp(-4.0 * std::numbers::ln2 * x * x);
}

std::vector<double> BurnComb::tooth_weights() const {
    std::vector<double> w(static_cast<std::size_t>(2 * n_teeth_half + 1));
    for (int m = -n_teeth_half; m <= n_teeth_half; ++m)
        w[static_cast<std::size_t>(m + n_teeth_half)] = tooth_weight(m);
    return w;
}

void JitterModel::validate() const {
    if (!finite_nonneg(center_amplitude_hz)) throw ConfigError("jitter.center_amplitude_hz must be >= 0");
    if (!finite_nonneg(rep_rate_amplitude_hz))
        throw ConfigError("jitter.rep_rate_amplitude_hz must be >= 0");
    if (!finite_nonneg(drift_hz_per_sqrt_s))
        throw ConfigError("jitter.drift_hz_per_sqrt_s must be >= 0");
    if (!finite_positive(resample_interval_s))
        throw ConfigError("jitter.resample_interval_s must be > 0");
    if (n_realizations < 1) throw ConfigError("jitter.n_realizations must be >= 1");
}

double JitterModel::max_excursion_hz(int n_teeth_half, double duration_s) const noexcept {
    return center_amplitude_hz + static_cast<double>(n_teeth_half) * rep_rate_amplitude_hz +
           5.0 * drift_hz_per_sqrt_s * std::sqrt(std::max(duration_s, 0.0));
}

void BurnConfig::validate() const {
    if (!finite_nonneg(pump_rate)) throw ConfigError("burn.pump_rate must be >= 0");
    if (!finite_positive(dt_s)) throw ConfigError("burn.dt_s must be > 0");
    if (!std::isfinite(duration_s) || duration_s < dt_s)
        throw ConfigError("burn.duration_s must be >= burn.dt_s");
    if (tooth_window < 1) throw ConfigError("burn.tooth_window must be >= 1");
    if (absorber) absorber->validate();
}

void PopulationField::validate(double tol) const {
    if (pops.size() != class_grid.size())
        throw GuardError("grid", "population count does not match the class grid");
    for (const auto& n : pops) {
        for (double v : n)
            if (!(v >= -tol && v <= 1.0 + tol)) throw GuardError("populations", "value outside [0, 1]");
        if (std::abs(n[0] + n[1] + n[2] - 1.0) > tol)
            throw GuardError("populations", "class populations do not sum to 1");
    }
}

double PopulationField::max_sum_error() const noexcept {
    double worst = 0.0;
    for (const auto& n : pops) worst = std::max(worst, std::abs(n[0] + n[1] + n[2] - 1.0));
    return worst;
}

}  // namespace afc::holeburn
