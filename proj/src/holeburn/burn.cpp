#include "afc/holeburn/burn.hpp"

#include <algorithm>
#include <cmath>

#include "afc/common/error.hpp"
#include "afc/common/rng.hpp"
#include "afc/holeburn/kernels.hpp"
#include "afc/holeburn/od.hpp"

namespace afc::holeburn {

PopulationField thermal_populations(const FrequencyGrid& class_grid) {
    return PopulationField{class_grid,
                           std::vector<Triple>(class_grid.size(), Triple{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0})};
}

namespace {

double coverage_half_width(const BurnComb& comb, const JitterModel& jitter, double duration_s) {
    return comb.half_span_hz() + 10.0 * comb.rep_rate_hz +
           jitter.max_excursion_hz(comb.n_teeth_half, duration_s);
}

}  // namespace

FrequencyGrid make_class_grid(const BurnComb& comb, const JitterModel& jitter, double duration_s) {
    comb.validate();
    jitter.validate();
    const double spacing = 0.5 * comb.tooth_width_hz;
    const double half = coverage_half_width(comb, jitter, duration_s);
    const auto steps = static_cast<std::size_t>(std::ceil(half / spacing));
    return spectral::grid_from_spacing(comb.center_offset_hz - static_cast<double>(steps) * spacing,
                                       spacing, 2 * steps + 1);
}

FrequencyGrid make_class_grid_on(const FrequencyGrid& probe, const BurnComb& comb,
                                 const JitterModel& jitter, double duration_s) {
    comb.validate();
    jitter.validate();
    const double ratio = 0.5 * comb.tooth_width_hz / probe.spacing();
    if (ratio < 1.0 - 1e-9) throw GuardError("grid", "probe grid is coarser than the class spacing");
    const auto stride = static_cast<std::ptrdiff_t>(std::floor(ratio + 1e-9));
    const double half = coverage_half_width(comb, jitter, duration_s);
    const auto lo = static_cast<std::ptrdiff_t>(std::floor(probe.position(comb.center_offset_hz - half)));
    const auto hi = static_cast<std::ptrdiff_t>(std::ceil(probe.position(comb.center_offset_hz + half)));
    const auto n = static_cast<std::size_t>((hi - lo + stride - 1) / stride + 1);
    return spectral::grid_from_spacing(probe.first() + static_cast<double>(lo) * probe.spacing(),
                                       static_cast<double>(stride) * probe.spacing(), n);
}

namespace {

void check_inputs(const PopulationField& pops, const BurnComb& comb, const JitterModel& jitter,
                  const BurnConfig& cfg, const spectral::HyperfineScheme& scheme) {
    comb.validate();
    jitter.validate();
    cfg.validate();
    scheme.validate();
    pops.validate(1e-12);
    const auto& g = pops.class_grid;
    if (g.spacing() > 0.5 * comb.tooth_width_hz * (1.0 + 1e-9))
        throw GuardError("grid", "class grid spacing exceeds tooth_width / 2");
    const double lo = comb.center_offset_hz - comb.half_span_hz();
    const double hi = comb.center_offset_hz + comb.half_span_hz();
    if (g.first() > lo || g.last() < hi)
        throw GuardError("grid", "class grid does not cover the comb teeth");
}

kernels::StepInputs base_inputs(const PopulationField& pops, const BurnComb& comb,
                                const BurnConfig& cfg, const spectral::HyperfineScheme& scheme,
                                const std::vector<double>& weights) {
    kernels::StepInputs in;
    in.class_first_hz = pops.class_grid.first();
    in.class_spacing_hz = pops.class_grid.spacing();
    for (int g = 0; g < 3; ++g)
        for (int e = 0; e < 3; ++e) {
            in.offsets[3 * g + e] = scheme.offset(g, e);
            in.strengths[3 * g + e] = scheme.strength[g][e];
            in.branching[3 * e + g] = scheme.branching(e, g);
        }
    in.half_width_hz = 0.5 * comb.tooth_width_hz;
    in.n_teeth_half = comb.n_teeth_half;
    in.weights = weights;
    in.window = cfg.tooth_window;
    in.pump_rate = cfg.pump_rate;
    return in;
}

void attenuation_on_classes(const DeviationRenderer& renderer, const PopulationField& field,
                            const InhomogeneousLine& absorber, std::vector<double>& out) {
    const auto dev = renderer.render(field, absorber);
    for (std::size_t c = 0; c < out.size(); ++c) {
        const double od = std::max(absorber.od_at(field.class_grid.frequency(c)) + dev[c], 0.0);
        out[c] = od > 1e-12 ? -std::expm1(-od) / od : 1.0;
    }
}

PopulationField burn_one(const PopulationField& start, const BurnComb& comb,
                         const JitterModel& jitter, const BurnConfig& cfg,
                         const spectral::HyperfineScheme& scheme, std::uint64_t seed,
                         const BurnObserver& observer) {
    PopulationField field = start;
    if (cfg.pump_rate == 0.0) return field;

    const auto weights = comb.tooth_weights();
    kernels::StepInputs in = base_inputs(field, comb, cfg, scheme, weights);

    std::optional<DeviationRenderer> renderer;
    std::vector<double> attenuation;
    if (cfg.absorber) {
        // Lorentzian tails beyond 1 GHz carry < 4e-4 of the area; truncating keeps
        // the per-step FFT short.
        renderer.emplace(scheme, field.class_grid, field.pops.size(), 0, 1, in.half_width_hz, 1e9);
        attenuation.resize(field.pops.size());
    }

    Rng rng(seed);
    double shift = 0.0;
    double excursion = 0.0;
    double drift = 0.0;
    double next_resample = 0.0;

    const auto n_steps = static_cast<std::size_t>(std::ceil(cfg.duration_s / cfg.dt_s - 1e-9));
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * cfg.dt_s;
        const double dt = std::min(cfg.dt_s, cfg.duration_s - t);
        if (t >= next_resample - 1e-12 * cfg.dt_s) {
            shift = rng.symmetric(jitter.center_amplitude_hz);
            excursion = rng.symmetric(jitter.rep_rate_amplitude_hz);
            next_resample += jitter.resample_interval_s;
        }
        if (jitter.drift_hz_per_sqrt_s > 0.0)
            drift += jitter.drift_hz_per_sqrt_s * std::sqrt(dt) * rng.normal();

        in.tooth_center_hz = comb.center_offset_hz + shift + drift;
        in.tooth_spacing_hz = comb.rep_rate_hz + excursion;
        in.dt_s = dt;
        if (renderer) {
            attenuation_on_classes(*renderer, field, *cfg.absorber, attenuation);
            in.attenuation = attenuation;
        }
        const double max_w = kernels::burn_step_omp(in, field.pops);
        if (max_w * dt > 5.0)
            throw GuardError("burn-step", "dt * max rate exceeds 5; reduce burn.dt_s");
        if (observer) observer(k + 1, field);
    }
    return field;
}

}  // namespace

PopulationField burn(const PopulationField& pops, const BurnComb& comb, const JitterModel& jitter,
                     const BurnConfig& cfg, const spectral::HyperfineScheme& scheme,
                     const BurnObserver& observer) {
    check_inputs(pops, comb, jitter, cfg, scheme);
    if (jitter.n_realizations == 1)
        return burn_one(pops, comb, jitter, cfg, scheme, mix_seed(jitter.seed, 0), observer);

    // OD is linear in the populations, so the mean field renders the mean OD.
    PopulationField mean{pops.class_grid, std::vector<Triple>(pops.pops.size(), Triple{})};
    const auto r_count = static_cast<std::uint64_t>(jitter.n_realizations);
    for (std::uint64_t r = 0; r < r_count; ++r) {
        const auto one = burn_one(pops, comb, jitter, cfg, scheme, mix_seed(jitter.seed, r), observer);
        for (std::size_t c = 0; c < mean.pops.size(); ++c)
            for (int g = 0; g < 3; ++g) mean.pops[c][g] += one.pops[c][g];
    }
    for (auto& n : mean.pops)
        for (double& v : n) v /= static_cast<double>(r_count);
    return mean;
}


PopulationField burn_realization(const PopulationField& pops, const BurnComb& comb,
                                 const JitterModel& jitter, const BurnConfig& cfg,
                                 const spectral::HyperfineScheme& scheme,
                                 std::uint64_t realization, const BurnObserver& observer) {
    check_inputs(pops, comb, jitter, cfg, scheme);
    return burn_one(pops, comb, jitter, cfg, scheme, mix_seed(jitter.seed, realization), observer);
}

}  // namespace afc::holeburn
