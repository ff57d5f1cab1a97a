#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace afc::echo {

/// Three interleaved combs with equal spacing, detuned by delta_k and
/// weighted by A_k. envelope(t) = |sum_k A_k exp(i 2 pi delta_k t)|^2 exp(-t/T)
/// with T = 1 / (pi tooth_fwhm), divided by |sum_k A_k|^2.
struct BeatModel {
    std::array<std::complex<double>, 3> amplitudes{1.0, 0.0, 0.0};
    std::array<double, 3> detunings_hz{};
    double tooth_fwhm_hz = 25e6;

    void validate() const;
    double decay_time_s() const noexcept;
    double at(double t_s) const noexcept;
};

std::vector<double> beat_envelope_model(const BeatModel& model, std::span<const double> t_s);

/// Local maxima of the envelope in (t_lo, t_hi): zeros of the closed-form
/// derivative, bracketed on a 0.1 ns scan and refined by bisection.
std::vector<double> beat_local_maxima(const BeatModel& model, double t_lo_s, double t_hi_s);

}  // namespace afc::echo
