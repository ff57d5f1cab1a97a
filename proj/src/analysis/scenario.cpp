#include "afc/analysis/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "afc/common/error.hpp"
#include "afc/common/numeric.hpp"
#include "afc/echo/transfer.hpp"
#include "afc/holeburn/burn.hpp"
#include "afc/holeburn/metrics.hpp"
#include "afc/holeburn/od.hpp"

namespace afc::analysis {

void EchoConfig::validate() const {
    if (!(record_length_s > 0.0) || !std::isfinite(record_length_s))
        throw ConfigError("echo.record_length_s must be > 0");
    if (!(threshold >= 0.0) || threshold > 1.0) throw ConfigError("echo.threshold must be in [0, 1]");
    if (max_echoes < 1) throw ConfigError("echo.max_echoes must be >= 1");
}

void GridConfig::validate() const {
    if (!std::isfinite(center_hz)) throw ConfigError("grid.center_hz must be finite");
    if (!(span_hz > 0.0) || !std::isfinite(span_hz)) throw ConfigError("grid.span_hz must be > 0");
    if (n_points < 2) throw ConfigError("grid.n_points must be >= 2");
}

spectral::FrequencyGrid GridConfig::make() const { return {center_hz, span_hz, n_points}; }

void AnalysisConfig::validate() const {
    if (!(contrast_window_hz > 0.0) || !std::isfinite(contrast_window_hz))
        throw ConfigError("analysis.contrast_window_hz must be > 0");
}

void ScenarioConfig::validate() const {
    scheme.validate();
    line.validate();
    comb.validate();
    jitter.validate();
    burn_config().validate();
    pulse.validate();
    echo.validate();
    grid.validate();
    analysis.validate();
}

holeburn::BurnConfig ScenarioConfig::burn_config() const {
    auto b = burn;
    if (attenuate_pump) b.absorber = line;
    else b.absorber.reset();
    return b;
}

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(name, e);
    }
}

double stderr_of(const std::vector<double>& v) {
    const auto n = static_cast<double>(v.size());
    if (v.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double mean = pairwise_sum(v) / n;
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - mean) * (v[i] - mean);
    return std::sqrt(pairwise_sum(sq) / (n - 1.0) / n);
}

double eta_at(const echo::EchoMetrics& m, std::size_t k) {
    return k < m.eta_per_echo.size() ? m.eta_per_echo[k] : 0.0;
}

spectral::FrequencyGrid probe_grid(const ScenarioConfig& cfg) {
    return stage("grid", [&] {
        const auto g = spectral::make_grid(cfg.grid.center_hz, cfg.grid.span_hz, cfg.grid.n_points,
                                           cfg.comb.tooth_width_hz);
        if (1.0 / g.spacing() < cfg.echo.record_length_s * (1.0 - 1e-9))
            throw GuardError("grid", "grid spacing gives a time record shorter than echo.record_length_s");
        return g;
    });
}

}  // namespace

CombSummary summarize_comb(const spectral::OpticalDepthProfile& profile, const ScenarioConfig& cfg) {
    CombSummary s;
    const double center = cfg.comb.center_offset_hz;
    const double window = cfg.analysis.contrast_window_hz;
    const double rep = cfg.comb.rep_rate_hz;
    const auto bare = spectral::line_profile(profile.grid, cfg.line);
    s.contrast = holeburn::comb_contrast(profile, center, window, rep, bare.od);

    const auto& g = profile.grid;
    const std::size_t a = g.nearest(center - 0.5 * window);
    const std::size_t b = g.nearest(center + 0.5 * window);
    s.peak_od = *std::max_element(profile.od.begin() + static_cast<std::ptrdiff_t>(a),
                                  profile.od.begin() + static_cast<std::ptrdiff_t>(b) + 1);

    s.hole_width_hz = std::numeric_limits<double>::quiet_NaN();
    const int m_max = static_cast<int>(std::floor(0.5 * window / rep));
    for (int m = -m_max; m <= m_max; ++m) {
        try {
            const double w = holeburn::hole_width(profile, center + m * rep, 0.5 * rep);
            if (std::isnan(s.hole_width_hz) || w < s.hole_width_hz) s.hole_width_hz = w;
        } catch (const NotAHoleError&) {
        }
    }
    return s;
}

EchoResult run_echo(const spectral::OpticalDepthProfile& profile, const ScenarioConfig& cfg) {
    EchoResult r;
    const auto tf = stage("transfer", [&] { return echo::transfer_from_od(profile); });
    r.trace = stage("propagate", [&] { return echo::propagate(cfg.pulse, tf); });
    r.input_energy = stage("propagate", [&] {
        const auto e = echo::pulse_spectrum(cfg.pulse, profile.grid);
        std::vector<double> p(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) p[i] = std::norm(e[i]);
        return pairwise_sum(p) * profile.grid.spacing();
    });
    r.metrics = stage("metrics", [&] {
        return echo::extract_metrics(r.trace, 1.0 / cfg.comb.rep_rate_hz, r.input_energy,
                                     cfg.echo.threshold, cfg.echo.max_echoes);
    });
    return r;
}

namespace {

struct Burned {
    BurnResult mean;
    std::vector<spectral::OpticalDepthProfile> realizations;  // only when n >= 2
};

Burned burn_all(const ScenarioConfig& cfg, bool keep_realizations) {
    stage("config", [&] { cfg.validate(); return 0; });
    const auto probe = probe_grid(cfg);
    const auto bcfg = cfg.burn_config();
    const auto classes = stage("grid", [&] {
        return holeburn::make_class_grid_on(probe, cfg.comb, cfg.jitter, bcfg.duration_s);
    });
    const auto start = holeburn::thermal_populations(classes);
    auto render = [&](const holeburn::PopulationField& p) {
        return stage("od", [&] {
            return holeburn::od_from_populations(p, cfg.scheme, cfg.line, probe, cfg.comb.tooth_width_hz);
        });
    };

    std::vector<spectral::OpticalDepthProfile> realizations;
    const auto n_real = static_cast<std::uint64_t>(cfg.jitter.n_realizations);
    holeburn::PopulationField mean{classes, std::vector<holeburn::Triple>(classes.size(), holeburn::Triple{})};
    for (std::uint64_t r = 0; r < n_real; ++r) {
        auto one = stage("burn", [&] {
            return holeburn::burn_realization(start, cfg.comb, cfg.jitter, bcfg, cfg.scheme, r);
        });
        if (n_real == 1) {
            mean = std::move(one);
            break;
        }
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (int g = 0; g < 3; ++g) mean.pops[c][g] += one.pops[c][g];
        if (keep_realizations) realizations.push_back(render(one));
    }
    if (n_real > 1)
        for (auto& n : mean.pops)
            for (double& v : n) v /= static_cast<double>(n_real);
    auto profile = render(mean);
    return Burned{BurnResult{std::move(mean), std::move(profile)}, std::move(realizations)};
}

}  // namespace

BurnResult run_burn(const ScenarioConfig& cfg) { return burn_all(cfg, false).mean; }

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    auto burned = burn_all(cfg, true);
    ScenarioResult res{std::move(burned.mean.pops), std::move(burned.mean.profile), {}, {}, {}, {}, 0.0};
    res.comb = stage("comb", [&] { return summarize_comb(res.profile, cfg); });
    auto echo_res = run_echo(res.profile, cfg);
    res.trace = std::move(echo_res.trace);
    res.metrics = std::move(echo_res.metrics);
    res.input_energy = echo_res.input_energy;

    std::vector<double> contrast, eta1, eta2, eta3, total;
    for (const auto& p : burned.realizations) {
        contrast.push_back(stage("comb", [&] { return summarize_comb(p, cfg); }).contrast);
        const auto m = run_echo(p, cfg).metrics;
        eta1.push_back(eta_at(m, 0));
        eta2.push_back(eta_at(m, 1));
        eta3.push_back(eta_at(m, 2));
        total.push_back(m.eta_total);
    }
    res.errors = {stderr_of(contrast), stderr_of(eta1), stderr_of(eta2), stderr_of(eta3), stderr_of(total)};
    return res;
}

}  // namespace afc::analysis
