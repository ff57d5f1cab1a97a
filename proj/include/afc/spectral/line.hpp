#pragma once

#include <string_view>
#include <vector>

#include "afc/spectral/grid.hpp"

namespace afc::spectral {

enum class LineShape { gaussian, lorentzian };

LineShape parse_line_shape(std::string_view name);
std::string_view to_string(LineShape shape) noexcept;

/// Inhomogeneously broadened absorption line, centered at offset 0.
struct InhomogeneousLine {
    double fwhm_hz = 10e9;
    double peak_od = 6.0;  ///< alpha * L at line center
    LineShape shape = LineShape::gaussian;

    void validate() const;

    /// OD at offset `hz` from line center.
    double od_at(double hz) const noexcept;
};

/// OD(nu) sampled on a grid. Values are nonnegative and finite.
struct OpticalDepthProfile {
    FrequencyGrid grid;
    std::vector<double> od;

    void validate() const;
    double max() const noexcept;
    /// Linear interpolation; zero outside the grid.
    double interpolate(double hz) const noexcept;
    /// Trapezoidal integral of OD over the grid (Hz).
    double integral() const;
};

OpticalDepthProfile line_profile(const FrequencyGrid& grid, const InhomogeneousLine& line);

/// Unit-peak Lorentzian with half width at half maximum `half_width`.
inline double lorentz_peak(double x, double half_width) noexcept {
    const double u = x / half_width;
    return 1.0 / (1.0 + u * u);
}

/// Unit-area Lorentzian of half width `half_width`.
double lorentz_area(double x, double half_width) noexcept;

}  // namespace afc::spectral
