#pragma once

#include <complex>
#include <vector>

#include "afc/spectral/grid.hpp"

namespace afc::echo {

using cplx = std::complex<double>;

/// Transform-limited Gaussian pulse. The field is
/// E(t) = amplitude * exp(-2 ln2 t^2 / duration^2) * exp(i 2 pi center t),
/// so `duration_fwhm_s` is the intensity FWHM.
struct InputPulse {
    double duration_fwhm_s = 70e-12;
    double center_offset_hz = 0.0;
    double amplitude = 1.0;

    void validate() const;
    /// Intensity FWHM of the spectrum, 2 ln2 / (pi duration).
    double spectral_fwhm_hz() const noexcept;
    /// Field spectrum at `hz` (unit convention: E(t) = int E(nu) e^{i 2 pi nu t} dnu).
    cplx spectrum_at(double hz) const noexcept;
    /// Pulse energy int |E(t)|^2 dt.
    double energy() const noexcept;
};

/// Samples the pulse spectrum on `grid`. Throws GuardError("pulse-grid") when
/// the span is below 4 spectral FWHM or the record 1 / spacing is shorter
/// than 20 pulse durations.
std::vector<cplx> pulse_spectrum(const InputPulse& pulse, const spectral::FrequencyGrid& grid);

}  // namespace afc::echo
