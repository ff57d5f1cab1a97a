#include "afc/echo/pulse.hpp"

#include <cmath>
#include <numbers>

#include "afc/common/error.hpp"

namespace afc::echo {

namespace {

// exp(-a t^2) with a = 2 ln2 / duration^2.
double field_rate(double duration) { return 2.0 * std::numbers::ln2 / (duration * duration); }

}  // namespace

void InputPulse::validate() const {
    if (!std::isfinite(duration_fwhm_s) || duration_fwhm_s <= 0.0)
        throw ConfigError("pulse.duration_s must be > 0");
    if (!std::isfinite(center_offset_hz)) throw ConfigError("pulse.center_offset_hz must be finite");
    if (!std::isfinite(amplitude) || amplitude <= 0.0) throw ConfigError("pulse amplitude must be > 0");
}

double InputPulse::spectral_fwhm_hz() const noexcept {
    return 2.0 * std::numbers::ln2 / (std::numbers::pi * duration_fwhm_s);
}

cplx InputPulse::spectrum_at(double hz) const noexcept {
    const double a = field_rate(duration_fwhm_s);
    const double x = hz - center_offset_hz;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return amplitude * std::sqrt(std::numbers::pi / a) * std::exp(-pi2 * x * x / a);
}

double InputPulse::energy() const noexcept {
    return amplitude * amplitude * std::sqrt(std::numbers::pi / (2.0 * field_rate(duration_fwhm_s)));
}

std::vector<cplx> pulse_spectrum(const InputPulse& pulse, const spectral::FrequencyGrid& grid) {
    pulse.validate();
    if (grid.span_hz() < 4.0 * pulse.spectral_fwhm_hz())
        throw GuardError("pulse-grid", "grid span is below 4 spectral widths of the pulse");
    if (1.0 / grid.spacing() < 20.0 * pulse.duration_fwhm_s)
        throw GuardError("pulse-grid", "time record is too short for the pulse");
    std::vector<cplx> e(grid.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = pulse.spectrum_at(grid.frequency(i));
    return e;
}

}  // namespace afc::echo
