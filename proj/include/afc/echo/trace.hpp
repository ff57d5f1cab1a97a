#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "afc/echo/pulse.hpp"
#include "afc/echo/transfer.hpp"

namespace afc::echo {

/// Output intensity |E(t)|^2 on a uniform time axis. Sample `zero_index`
/// is t = 0, the transmitted-pulse peak.
struct EchoTrace {
    double dt_s = 0.0;
    std::size_t zero_index = 0;
    std::vector<double> intensity;
    double pulse_fwhm_s = 0.0;

    double time(std::size_t i) const noexcept {
        return (static_cast<double>(i) - static_cast<double>(zero_index)) * dt_s;
    }
    double energy() const;
};

/// E(t_n) = N dnu * IDFT(E(nu))[n], t_n = n / (N dnu), on the raw circular
/// axis (sample 0 is t = 0).
std::vector<cplx> time_field(std::span<const cplx> spectrum, double spacing_hz);

/// E_out = E_in h, transformed to time and rotated so the record starts
/// N/16 samples before the input time origin. t = 0 is then moved to the
/// transmitted peak found within +-3 pulse durations.
///
/// Throws GuardError("wrap", causality) when the last N/16 samples carry
/// more than 1e-4 of the energy and GuardError("causality", causality) when the
/// energy before -3 pulse durations exceeds 1e-4 of the total.
EchoTrace propagate(const InputPulse& pulse, const TransferFunction& transfer);

struct EchoMetrics {
    std::vector<double> eta_per_echo;  ///< k = 1, 2, ...
    double eta_total = 0.0;
    double transmitted_fraction = 0.0;
    int n_visible = 0;
    double tau_s = 0.0;
    // Diagnostics, not serialized.
    std::vector<double> peak_time_s;    ///< per echo window, time of its maximum
    std::vector<double> peak_intensity; ///< per echo window
    double transmitted_peak = 0.0;
};

/// Energies in windows [k tau - tau/2, k tau + tau/2) divided by
/// `input_energy`; k = 0 is the transmitted pulse. At most `max_echoes`
/// echo windows are used, fewer if the record ends first. An echo is visible
/// when its window peak reaches threshold * transmitted peak.
EchoMetrics extract_metrics(const EchoTrace& trace, double tau_s, double input_energy,
                            double threshold, int max_echoes = 40);

}  // namespace afc::echo
