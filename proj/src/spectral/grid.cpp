#include "afc/spectral/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "afc/common/error.hpp"

namespace afc::spectral {

FrequencyGrid::FrequencyGrid(double center_hz, double span_hz, std::size_t n_points)
  : center_(center_hz), span_(span_hz), n_(n_points), spacing_(0.0) {
    if (!std::isfinite(center_hz) || !std::isfinite(span_hz))
        throw GuardError("grid", "center and span must be finite");
    if (n_points < 2) throw GuardError("grid", "need at least 2 points");
    if (!(span_hz > 0.0)) throw GuardError("grid", "span must be positive");
    spacing_ = span_hz / static_cast<double>(n_points - 1);
}

std::size_t FrequencyGrid::nearest(double hz) const noexcept {
    const double p = std::round(position(hz));
    if (!(p > 0.0)) return 0;
    return std::min(static_cast<std::size_t>(p), n_ - 1);
}

std::vector<double> FrequencyGrid::frequencies() const {
    std::vector<double> f(n_);
    for (std::size_t i = 0; i < n_; ++i) f[i] = frequency(i);
    return f;
}

bool FrequencyGrid::same_as(const FrequencyGrid& other, double rel_tol) const noexcept {
    if (n_ != other.n_) return false;
    const double tol = rel_tol * std::max(span_, other.span_);
    return std::abs(first() - other.first()) <= tol && std::abs(span_ - other.span_) <= tol;
}

FrequencyGrid make_grid(double center_hz, double span_hz, std::size_t n_points,
                        double min_feature_hz) {
    if (!std::isfinite(min_feature_hz) || !(min_feature_hz > 0.0))
        throw GuardError("grid", "minimum feature width must be positive and finite");
    FrequencyGrid grid(center_hz, span_hz, n_points);
    if (grid.spacing() > 0.25 * min_feature_hz) {
        std::ostringstream msg;
        msg << "spacing " << grid.spacing() << " Hz under-resolves a " << min_feature_hz
            << " Hz feature (need <= " << 0.25 * min_feature_hz << " Hz)";
        throw GuardError("grid", msg.str());
    }
    return grid;
}

FrequencyGrid grid_from_spacing(double first_hz, double spacing_hz, std::size_t n_points) {
    if (n_points < 2) throw GuardError("grid", "need at least 2 points");
    const double span = spacing_hz * static_cast<double>(n_points - 1);
    return FrequencyGrid(first_hz + 0.5 * span, span, n_points);
}

}  // namespace afc::spectral
