#pragma once

#include <span>

#include "afc/spectral/line.hpp"

namespace afc::holeburn {

/// (OD_max - OD_min) / OD_max over [center - window/2, center + window/2],
/// where OD_max and OD_min are means of the per-period maxima and minima of
/// consecutive period-long segments. With a `reference` (the unburned OD on
/// the same grid) the extrema are taken of OD / reference, so the slope of
/// the bare line does not count as modulation. Throws GuardError("contrast")
/// for a window outside the grid, shorter than three periods, all-zero OD,
/// or a nonpositive reference inside the window.
double comb_contrast(const spectral::OpticalDepthProfile& profile, double center_hz,
                     double window_hz, double period_hz,
                     std::span<const double> reference = {});

struct HoleShape {
    double fwhm_hz = 0.0;
    double center_hz = 0.0;  ///< grid frequency of the minimum
    double depth = 0.0;      ///< baseline - minimum
    double baseline = 0.0;
};

/// Hole nearest `tooth_hz` (minimum within +-search_half_hz). The baseline is
/// the mean of the largest OD found within search_half_hz on either side of
/// the minimum; the width is taken between the first linearly interpolated
/// half-depth crossings walking outward. Throws NotAHoleError
/// when the minimum is not below 95% of the baseline.
HoleShape hole_shape(const spectral::OpticalDepthProfile& profile, double tooth_hz,
                     double search_half_hz);

inline double hole_width(const spectral::OpticalDepthProfile& profile, double tooth_hz,
                         double search_half_hz) {
    return hole_shape(profile, tooth_hz, search_half_hz).fwhm_hz;
}

}  // namespace afc::holeburn
