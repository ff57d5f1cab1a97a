#include "corpus.hpp"

#include <algorithm>
#include <cmath>

#include "afc/common/error.hpp"
#include "afc/common/rng.hpp"
#include "afc/echo/trace.hpp"
#include "afc/echo/transfer.hpp"
#include "afc/holeburn/burn.hpp"
#include "afc/holeburn/od.hpp"

namespace afc::testing {

analysis::ScenarioConfig small_config() {
    analysis::ScenarioConfig c;
    c.comb.n_teeth_half = 8;
    c.jitter.center_amplitude_hz = 12.5e6;
    c.jitter.rep_rate_amplitude_hz = 0.05e6;
    c.burn.pump_rate = 1000.0;
    c.burn.duration_s = 0.1;
    c.burn.dt_s = 5e-3;
    c.grid.span_hz = 32767.75e6;
    c.grid.n_points = std::size_t{1} << 17;
    c.analysis.contrast_window_hz = 0.5e9;
    return c;
}

analysis::ScenarioConfig corpus_config(std::uint64_t seed, std::size_t index) {
    Rng rng(mix_seed(seed, index));
    auto c = small_config();
    auto& s = c.scheme;
    s.ground_splittings_hz = {rng.uniform() * 30e6, rng.uniform() * 30e6};
    s.excited_splittings_hz = {rng.uniform() * 10e6, rng.uniform() * 10e6};
    s.ground_order = rng.uniform() < 0.5 ? spectral::LadderOrder::ascending : spectral::LadderOrder::descending;
    s.excited_order = rng.uniform() < 0.5 ? spectral::LadderOrder::ascending : spectral::LadderOrder::descending;
    spectral::StrengthMatrix raw{};
    for (auto& row : raw)
        for (double& f : row) f = 0.01 + rng.uniform();
    s.strength = spectral::normalize_rows(raw, nullptr);

    c.line.fwhm_hz = 4e9 + 6e9 * rng.uniform();
    c.line.peak_od = 0.2 + 7.8 * rng.uniform();
    c.line.shape = spectral::LineShape::gaussian;

    c.comb.rep_rate_hz = 30e6 + 90e6 * rng.uniform();
    c.comb.n_teeth_half = static_cast<int>(rng.uniform() * 6.0);
    c.comb.center_offset_hz = (rng.uniform() - 0.5) * 4e9;
    c.comb.tooth_width_hz = 1e6 + 2e6 * rng.uniform();
    c.comb.envelope_fwhm_hz = 1e9 + 5e9 * rng.uniform();

    c.jitter.center_amplitude_hz = 20e6 * rng.uniform();
    c.jitter.rep_rate_amplitude_hz = 0.5e6 * rng.uniform();
    c.jitter.drift_hz_per_sqrt_s = rng.uniform() < 0.3 ? 5e6 * rng.uniform() : 0.0;
    c.jitter.seed = index;

    c.burn.pump_rate = 1500.0 * rng.uniform();
    c.burn.dt_s = 2e-3;
    c.burn.duration_s = 0.01 + 0.05 * rng.uniform();
    c.attenuate_pump = rng.uniform() < 0.3;

    c.pulse.center_offset_hz = c.comb.center_offset_hz;
    return c;
}

CorpusReport run_corpus(std::size_t n_configs, std::uint64_t seed) {
    CorpusReport rep;
    for (std::size_t i = 0; i < n_configs; ++i) {
        const auto cfg = corpus_config(seed, i);
        try {
            cfg.validate();
            const auto probe = spectral::make_grid(cfg.grid.center_hz, cfg.grid.span_hz,
                                                   cfg.grid.n_points, cfg.comb.tooth_width_hz);
            const auto bcfg = cfg.burn_config();
            const auto classes = holeburn::make_class_grid_on(probe, cfg.comb, cfg.jitter, bcfg.duration_s);
            const auto start = holeburn::thermal_populations(classes);
            const auto burned = holeburn::burn(start, cfg.comb, cfg.jitter, bcfg, cfg.scheme,
                                               [&](std::size_t, const holeburn::PopulationField& f) {
                                                   ++rep.burn_steps_checked;
                                                   rep.worst_population_sum_error =
                                                       std::max(rep.worst_population_sum_error, f.max_sum_error());
                                               });
            const auto bare = holeburn::od_from_populations(start, cfg.scheme, cfg.line, probe, cfg.comb.tooth_width_hz);
            const auto od = holeburn::od_from_populations(burned, cfg.scheme, cfg.line, probe, cfg.comb.tooth_width_hz);
            rep.worst_integral_drift = std::max(
                rep.worst_integral_drift, std::abs(od.integral() - bare.integral()) / bare.integral());

            const auto tf = echo::transfer_from_od(od);
            for (const auto& h : tf.h) rep.worst_transfer_magnitude = std::max(rep.worst_transfer_magnitude, std::abs(h));
            const auto r = analysis::run_echo(od, cfg);
            rep.worst_energy_ratio = std::max(rep.worst_energy_ratio,
                                              r.metrics.transmitted_fraction + r.metrics.eta_total);
            rep.worst_energy_ratio = std::max(rep.worst_energy_ratio, r.trace.energy() / r.input_energy);
            ++rep.configs;
        } catch (const std::exception& e) {
            if (rep.failure.empty()) rep.failure = "config " + std::to_string(i) + ": " + e.what();
        }
    }
    return rep;
}

}  // namespace afc::testing
