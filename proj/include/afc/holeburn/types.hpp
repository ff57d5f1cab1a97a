#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "afc/spectral/grid.hpp"
#include "afc/spectral/line.hpp"

namespace afc::holeburn {

using spectral::FrequencyGrid;
using spectral::InhomogeneousLine;
using spectral::OpticalDepthProfile;

/// Burning frequency comb: teeth at center_offset + m * rep_rate for
/// m = -n_teeth_half..n_teeth_half, weighted by a Gaussian spectral envelope
/// (peak 1 at the comb center).
struct BurnComb {
    double rep_rate_hz = 80e6;
    int n_teeth_half = 60;
    double center_offset_hz = 0.0;
    double envelope_fwhm_hz = 6.3e9;
    double tooth_width_hz = 1e6;  ///< per-shot interaction linewidth (FWHM)

    void validate() const;
    double tooth_weight(int m) const noexcept;
    std::vector<double> tooth_weights() const;
    double half_span_hz() const noexcept { return n_teeth_half * rep_rate_hz; }
};

/// Laser instability model. Each macro-step draws a whole-comb shift
/// uniform in [-center_amplitude, center_amplitude] and a tooth-spacing
/// excursion uniform in [-rep_rate_amplitude, rep_rate_amplitude]; tooth m
/// then sits at center + shift + m * (rep_rate + excursion). An optional
/// random-walk drift of the comb center grows as sqrt(t).
struct JitterModel {
    double center_amplitude_hz = 0.0;
    double rep_rate_amplitude_hz = 0.0;
    double drift_hz_per_sqrt_s = 0.0;
    double resample_interval_s = 10e-3;
    int n_realizations = 1;
    std::uint64_t seed = 1;

    void validate() const;
    /// Largest tooth displacement that can occur for a comb of half-size M
    /// over `duration_s` (drift counted at five standard deviations).
    double max_excursion_hz(int n_teeth_half, double duration_s) const noexcept;
};

struct BurnConfig {
    double pump_rate = 100.0;  ///< peak excitation rate per unit strength (1/s)
    double duration_s = 2.0;
    double dt_s = 10e-3;
    /// Teeth summed on each side of the nearest tooth. Teeth further away
    /// contribute less than (tooth_width / (2 * window * rep_rate))^2 each.
    int tooth_window = 16;
    /// When set, the pump reaching a class is reduced by the depth-averaged
    /// Beer-Lambert factor (1 - exp(-OD)) / OD of the current medium.
    std::optional<InhomogeneousLine> absorber;

    void validate() const;
};

using Triple = std::array<double, 3>;

/// Ground-state populations (n_1/2, n_3/2, n_5/2) per ion class, indexed by
/// the class's reference transition detuning.
struct PopulationField {
    FrequencyGrid class_grid;
    std::vector<Triple> pops;

    void validate(double tol = 1e-12) const;
    /// Largest |n_1 + n_3 + n_5 - 1| over all classes.
    double max_sum_error() const noexcept;
};

}  // namespace afc::holeburn
