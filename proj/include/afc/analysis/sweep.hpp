#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "afc/analysis/scenario.hpp"

namespace afc::analysis {

enum class SweepVariable { burn_time, pump_rate, detuning };

SweepVariable parse_sweep_variable(std::string_view name);
std::string_view to_string(SweepVariable v) noexcept;

struct SweepOutputs {
    bool spectra = false;
    bool traces = false;
    bool metrics = false;
};

struct SweepSpec {
    SweepVariable variable = SweepVariable::detuning;
    std::vector<double> values;
    ScenarioConfig base;
    SweepOutputs outputs;

    /// Nonempty, finite, strictly monotone values and a valid base config.
    void validate() const;
    /// Base config with `value` applied and seed = base seed XOR index.
    ScenarioConfig row_config(std::size_t index) const;
};

struct SweepRow {
    double value = 0.0;
    double contrast = 0.0;
    double hole_width_hz = 0.0;
    double peak_od = 0.0;
    double eta1 = 0.0;
    double eta2 = 0.0;
    double eta3 = 0.0;
    double eta_total = 0.0;
    int n_visible = 0;
    std::string status = "ok";  ///< "ok" or "error: <message>"
    McErrors errors;

    bool ok() const noexcept { return status == "ok"; }
};

SweepRow make_row(double value, const ScenarioResult& result);

/// Called once per successful row, possibly from a worker thread.
using RowSink = std::function<void(std::size_t index, const ScenarioConfig&, const ScenarioResult&)>;

/// Runs every value on `jobs` worker threads. Row order follows `values`;
/// a failing row records its error in `status` and the sweep continues.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs, const RowSink& sink = {});

}  // namespace afc::analysis
