#pragma once

#include <cstddef>
#include <vector>

namespace afc::spectral {

/// Uniform frequency axis. Frequencies are offsets (Hz) from the center of
/// the inhomogeneous line; absolute optical frequency never enters.
class FrequencyGrid {
public:
    FrequencyGrid(double center_hz, double span_hz, std::size_t n_points);

    double center_hz() const noexcept { return center_; }
    double span_hz() const noexcept { return span_; }
    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return spacing_; }
    double first() const noexcept { return center_ - 0.5 * span_; }
    double last() const noexcept { return center_ + 0.5 * span_; }

    double frequency(std::size_t i) const noexcept {
        return first() + static_cast<double>(i) * spacing_;
    }

    /// Fractional index of `hz` (may lie outside [0, size-1]).
    double position(double hz) const noexcept { return (hz - first()) / spacing_; }

    /// Nearest in-range index.
    std::size_t nearest(double hz) const noexcept;

    std::vector<double> frequencies() const;

    bool same_as(const FrequencyGrid& other, double rel_tol = 1e-12) const noexcept;

private:
    double center_;
    double span_;
    std::size_t n_;
    double spacing_;
};

/// Builds a grid and checks that its spacing resolves `min_feature_hz`
/// (spacing <= min_feature_hz / 4). Throws GuardError("grid") otherwise.
FrequencyGrid make_grid(double center_hz, double span_hz, std::size_t n_points,
                        double min_feature_hz);

/// Grid with a prescribed spacing, no resolution check.
FrequencyGrid grid_from_spacing(double first_hz, double spacing_hz, std::size_t n_points);

}  // namespace afc::spectral
