#include "afc/spectral/line.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "afc/common/error.hpp"
#include "afc/common/numeric.hpp"

namespace afc::spectral {

LineShape parse_line_shape(std::string_view name) {
    if (name == "gaussian") return LineShape::gaussian;
    if (name == "lorentzian") return LineShape::lorentzian;
    throw ConfigError("unknown line shape '" + std::string(name) +
                      "' (expected gaussian or lorentzian)");
}

std::string_view to_string(LineShape shape) noexcept {
    return shape == LineShape::gaussian ? "gaussian" : "lorentzian";
}

void InhomogeneousLine::validate() const {
    if (!std::isfinite(fwhm_hz) || !(fwhm_hz > 0.0))
        throw ConfigError("line fwhm_hz must be positive");
    if (!std::isfinite(peak_od) || peak_od < 0.0)
        throw ConfigError("line peak_od must be nonnegative");
}

double InhomogeneousLine::od_at(double hz) const noexcept {
    if (peak_od == 0.0) return 0.0;
    const double x = hz / fwhm_hz;
    if (shape == LineShape::gaussian)
        return peak_od * std::exp(-4.0 * std::numbers::ln2 * x * x);
    return peak_od / (1.0 + 4.0 * x * x);
}

void OpticalDepthProfile::validate() const {
    if (od.size() != grid.size())
        throw GuardError("profile", "OD sample count does not match grid");
    for (double v : od)
        if (!std::isfinite(v) || v < 0.0)
            throw GuardError("profile", "OD must be finite and nonnegative");
}

double OpticalDepthProfile::max() const noexcept {
    double m = 0.0;
    for (double v : od) m = v > m ? v : m;
    return m;
}

double OpticalDepthProfile::interpolate(double hz) const noexcept {
    const double p = grid.position(hz);
    if (p < 0.0 || p > static_cast<double>(grid.size() - 1)) return 0.0;
    const auto i = static_cast<std::size_t>(p);
    if (i + 1 >= grid.size()) return od.back();
    const double t = p - static_cast<double>(i);
    return (1.0 - t) * od[i] + t * od[i + 1];
}

double OpticalDepthProfile::integral() const {
    std::vector<double> w(od);
    w.front() *= 0.5;
    w.back() *= 0.5;
    return pairwise_sum(w) * grid.spacing();
}

OpticalDepthProfile line_profile(const FrequencyGrid& grid, const InhomogeneousLine& line) {
    line.validate();
    OpticalDepthProfile p{grid, std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) p.od[i] = line.od_at(grid.frequency(i));
    return p;
}

double lorentz_area(double x, double half_width) noexcept {
    return half_width / (std::numbers::pi * (half_width * half_width + x * x));
}

}  // namespace afc::spectral
