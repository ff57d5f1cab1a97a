#include "afc/holeburn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "afc/common/error.hpp"
#include "afc/common/numeric.hpp"

namespace afc::holeburn {

double comb_contrast(const spectral::OpticalDepthProfile& profile, double center_hz,
                     double window_hz, double period_hz, std::span<const double> reference) {
    const auto& grid = profile.grid;
    if (!(period_hz > 0.0) || !(window_hz > 0.0) || !std::isfinite(center_hz))
        throw GuardError("contrast", "degenerate window or period");
    const double lo = center_hz - 0.5 * window_hz;
    const double hi = center_hz + 0.5 * window_hz;
    if (lo < grid.first() || hi > grid.last())
        throw GuardError("contrast", "window extends beyond the grid");
    const auto n_periods = static_cast<std::size_t>(std::floor(window_hz / period_hz + 1e-9));
    if (n_periods < 3) throw GuardError("contrast", "window spans fewer than 3 periods");
    if (period_hz < 2.0 * grid.spacing())
        throw GuardError("contrast", "period is not resolved by the grid");

    if (!reference.empty() && reference.size() != profile.od.size())
        throw GuardError("contrast", "reference does not match the profile grid");
    auto value = [&](std::size_t i) {
        if (reference.empty()) return profile.od[i];
        if (!(reference[i] > 0.0)) throw GuardError("contrast", "reference OD must be positive in the window");
        return profile.od[i] / reference[i];
    };

    std::vector<double> maxima;
    std::vector<double> minima;
    for (std::size_t k = 0; k < n_periods; ++k) {
        const double a = lo + static_cast<double>(k) * period_hz;
        const auto i0 = static_cast<std::size_t>(std::ceil(grid.position(a) - 1e-9));
        const auto i1 = static_cast<std::size_t>(std::ceil(grid.position(a + period_hz) - 1e-9));
        double mx = value(i0);
        double mn = mx;
        for (std::size_t i = i0; i < std::min(i1, profile.od.size()); ++i) {
            const double v = value(i);
            mx = std::max(mx, v);
            mn = std::min(mn, v);
        }
        maxima.push_back(mx);
        minima.push_back(mn);
    }
    const double mean_max = pairwise_sum(maxima) / static_cast<double>(n_periods);
    const double mean_min = pairwise_sum(minima) / static_cast<double>(n_periods);
    if (!(mean_max > 0.0)) throw GuardError("contrast", "OD is zero throughout the window");
    return std::clamp((mean_max - mean_min) / mean_max, 0.0, 1.0);
}

HoleShape hole_shape(const spectral::OpticalDepthProfile& profile, double tooth_hz,
                     double search_half_hz) {
    const auto& grid = profile.grid;
    const auto& od = profile.od;
    const std::size_t a = grid.nearest(tooth_hz - search_half_hz);
    const std::size_t b = grid.nearest(tooth_hz + search_half_hz);
    std::size_t imin = a;
    for (std::size_t i = a; i <= b; ++i)
        if (od[i] < od[imin]) imin = i;

    // Adjacent maxima: the largest OD within one search half-width on each side.
    const std::size_t reach = static_cast<std::size_t>(std::ceil(search_half_hz / grid.spacing()));
    const std::size_t lo = imin > reach ? imin - reach : 0;
    const std::size_t hi = std::min(od.size() - 1, imin + reach);
    const auto left = static_cast<std::size_t>(
        std::max_element(od.begin() + static_cast<std::ptrdiff_t>(lo), od.begin() + static_cast<std::ptrdiff_t>(imin) + 1) -
        od.begin());
    const auto right = static_cast<std::size_t>(
        std::max_element(od.begin() + static_cast<std::ptrdiff_t>(imin), od.begin() + static_cast<std::ptrdiff_t>(hi) + 1) -
        od.begin());

    HoleShape h;
    h.center_hz = grid.frequency(imin);
    h.baseline = 0.5 * (od[left] + od[right]);
    h.depth = h.baseline - od[imin];
    if (!(od[imin] < 0.95 * h.baseline))
        throw NotAHoleError("no minimum below 95% of the local baseline near the tooth");

    const double level = od[imin] + 0.5 * h.depth;
    std::size_t l = imin;
    while (l > left && od[l] < level) --l;
    std::size_t r = imin;
    while (r < right && od[r] < level) ++r;
    if (od[l] < level || od[r] < level)
        throw NotAHoleError("hole does not recover to half depth on both sides");
    // od[l] >= level > od[l + 1]; same mirrored on the right.
    const double xl = grid.frequency(l) + grid.spacing() * (od[l] - level) / (od[l] - od[l + 1]);
    const double xr = grid.frequency(r) - grid.spacing() * (od[r] - level) / (od[r] - od[r - 1]);
    h.fwhm_hz = xr - xl;
    return h;
}

}  // namespace afc::holeburn
