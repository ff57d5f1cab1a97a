#include "afc/analysis/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "afc/common/error.hpp"
#include "afc/common/parallel.hpp"

namespace afc::analysis {

SweepVariable parse_sweep_variable(std::string_view name) {
    if (name == "burn_time") return SweepVariable::burn_time;
    if (name == "pump_rate") return SweepVariable::pump_rate;
    if (name == "detuning") return SweepVariable::detuning;
    throw ConfigError("unknown sweep variable '" + std::string(name) +
                      "' (expected burn_time, pump_rate or detuning)");
}

std::string_view to_string(SweepVariable v) noexcept {
    switch (v) {
    case SweepVariable::burn_time: return "burn_time";
    case SweepVariable::pump_rate: return "pump_rate";
    case SweepVariable::detuning: return "detuning";
    }
    return "?";
}

void SweepSpec::validate() const {
    if (values.empty()) throw ConfigError("sweep.values must not be empty");
    for (double v : values)
        if (!std::isfinite(v)) throw ConfigError("sweep.values must be finite");
    if (values.size() > 1) {
        const bool up = values[1] > values[0];
        for (std::size_t i = 1; i < values.size(); ++i) {
            const bool step_up = values[i] > values[i - 1];
            if (values[i] == values[i - 1] || step_up != up)
                throw ConfigError("sweep.values must be strictly monotone");
        }
    }
    base.validate();
    for (std::size_t i = 0; i < values.size(); ++i) row_config(i).validate();
}

ScenarioConfig SweepSpec::row_config(std::size_t index) const {
    ScenarioConfig cfg = base;
    const double v = values.at(index);
    switch (variable) {
    case SweepVariable::burn_time:
        cfg.burn.duration_s = v;
        cfg.burn.dt_s = std::min(cfg.burn.dt_s, v);
        break;
    case SweepVariable::pump_rate: cfg.burn.pump_rate = v; break;
    case SweepVariable::detuning:
        cfg.comb.center_offset_hz = v;
        cfg.pulse.center_offset_hz = v;
        break;
    }
    cfg.jitter.seed = base.jitter.seed ^ static_cast<std::uint64_t>(index);
    return cfg;
}

SweepRow make_row(double value, const ScenarioResult& r) {
    SweepRow row;
    row.value = value;
    row.contrast = r.comb.contrast;
    row.hole_width_hz = r.comb.hole_width_hz;
    row.peak_od = r.comb.peak_od;
    const auto& eta = r.metrics.eta_per_echo;
    row.eta1 = eta.size() > 0 ? eta[0] : 0.0;
    row.eta2 = eta.size() > 1 ? eta[1] : 0.0;
    row.eta3 = eta.size() > 2 ? eta[2] : 0.0;
    row.eta_total = r.metrics.eta_total;
    row.n_visible = r.metrics.n_visible;
    row.errors = r.errors;
    return row;
}

namespace {

SweepRow failed_row(double value, const std::string& what) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    SweepRow row;
    row.value = value;
    row.contrast = row.hole_width_hz = row.peak_od = nan;
    row.eta1 = row.eta2 = row.eta3 = row.eta_total = nan;
    row.errors = {nan, nan, nan, nan, nan};
    row.status = "error: " + what;
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs, const RowSink& sink) {
    spec.validate();
    const std::size_t n = spec.values.size();
    std::vector<SweepRow> rows(n);
    const int workers = static_cast<int>(std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, n));
    const int inner = std::max(1, parallel::max_threads() / workers);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        parallel::set_threads(inner);
        for (std::size_t i = next++; i < n; i = next++) {
            const auto cfg = spec.row_config(i);
            try {
                const auto result = run_scenario(cfg);
                rows[i] = make_row(spec.values[i], result);
                if (sink) sink(i, cfg, result);
            } catch (const std::exception& e) {
                rows[i] = failed_row(spec.values[i], e.what());
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return rows;
}

}  // namespace afc::analysis
