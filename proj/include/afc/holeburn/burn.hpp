#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "afc/holeburn/types.hpp"
#include "afc/spectral/hyperfine.hpp"

namespace afc::holeburn {

/// Equipartition (1/3, 1/3, 1/3) on every class.
PopulationField thermal_populations(const FrequencyGrid& class_grid);

/// Class grid for a comb: spacing <= tooth_width / 2, covering the comb span
/// plus a 10 * rep_rate guard band and the largest jitter excursion.
FrequencyGrid make_class_grid(const BurnComb& comb, const JitterModel& jitter,
                              double duration_s);

/// Same coverage, but with classes placed on every `stride`-th point of
/// `probe` so that rendering onto the probe grid is an exact convolution.
FrequencyGrid make_class_grid_on(const FrequencyGrid& probe, const BurnComb& comb,
                                 const JitterModel& jitter, double duration_s);

/// Called after every integration step with the step index (1-based).
using BurnObserver = std::function<void(std::size_t step, const PopulationField&)>;

/// Integrates the optical-pumping rate equations for `cfg.duration_s`.
/// Per step and class, W_ge = pump * f[g][e] * sum_m w_m L(nu_m - nu_c - offset(g,e)),
/// the surviving fraction of n_g is exp(-W_g dt) and the excited fraction
/// decays back with column-normalized branching ratios.
///
/// Throws GuardError("burn-step") when dt * max W > 5 and GuardError("grid")
/// when the class grid is too coarse or does not cover the comb.
PopulationField burn(const PopulationField& pops, const BurnComb& comb,
                     const JitterModel& jitter, const BurnConfig& cfg,
                     const spectral::HyperfineScheme& scheme,
                     const BurnObserver& observer = {});

/// One jitter realization with stream `realization` of `jitter.seed`;
/// `jitter.n_realizations` is ignored. burn() averages realizations
/// 0..n_realizations-1 of this function.
PopulationField burn_realization(const PopulationField& pops, const BurnComb& comb,
                                 const JitterModel& jitter, const BurnConfig& cfg,
                                 const spectral::HyperfineScheme& scheme,
                                 std::uint64_t realization, const BurnObserver& observer = {});

}  // namespace afc::holeburn
