#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "afc/echo/pulse.hpp"
#include "afc/echo/trace.hpp"
#include "afc/holeburn/types.hpp"
#include "afc/spectral/hyperfine.hpp"

namespace afc::analysis {

struct EchoConfig {
    double record_length_s = 1e-6;  ///< minimum time record, checked against the grid
    double threshold = 1e-3;        ///< visibility threshold relative to the transmitted peak
    int max_echoes = 40;

    void validate() const;
};

/// Probe grid shared by the OD image and the echo propagation.
struct GridConfig {
    double center_hz = 0.0;
    double span_hz = 131071.75e6;  ///< (2^19 - 1) * 0.25 MHz
    std::size_t n_points = std::size_t{1} << 19;

    void validate() const;
    spectral::FrequencyGrid make() const;
};

struct AnalysisConfig {
    double contrast_window_hz = 1.5e9;

    void validate() const;
};

struct ScenarioConfig {
    spectral::HyperfineScheme scheme = spectral::pr_yso_scheme();
    spectral::InhomogeneousLine line{};
    holeburn::BurnComb comb{};
    holeburn::JitterModel jitter{};
    holeburn::BurnConfig burn{};
    bool attenuate_pump = false;  ///< burn.absorber is set from `line` when true
    echo::InputPulse pulse{};
    EchoConfig echo{};
    GridConfig grid{};
    AnalysisConfig analysis{};

    /// Throws ConfigError naming the offending key.
    void validate() const;
    holeburn::BurnConfig burn_config() const;
};

/// Monte-Carlo standard errors over jitter realizations (NaN when fewer
/// than two realizations were run).
struct McErrors {
    double contrast = 0.0;
    double eta1 = 0.0;
    double eta2 = 0.0;
    double eta3 = 0.0;
    double eta_total = 0.0;
};

struct CombSummary {
    double contrast = 0.0;       ///< of OD / bare line, so the line slope is not modulation
    double hole_width_hz = 0.0;  ///< narrowest hole in the contrast window; NaN if none
    double peak_od = 0.0;        ///< largest OD in the contrast window
};

struct ScenarioResult {
    holeburn::PopulationField pops;  ///< realization mean
    spectral::OpticalDepthProfile profile;
    echo::EchoTrace trace;
    echo::EchoMetrics metrics;
    CombSummary comb;
    McErrors errors;
    double input_energy = 0.0;
};

/// Contrast, narrowest hole and peak OD in the analysis window around the
/// comb center.
CombSummary summarize_comb(const spectral::OpticalDepthProfile& profile, const ScenarioConfig& cfg);

/// Echo stage alone: transfer function, propagation and metrics.
struct EchoResult {
    echo::EchoTrace trace;
    echo::EchoMetrics metrics;
    double input_energy = 0.0;
};
EchoResult run_echo(const spectral::OpticalDepthProfile& profile, const ScenarioConfig& cfg);

/// reset -> burn -> image -> echo. Errors are rethrown as StageError naming
/// the stage ("grid", "burn", "od", "comb", "transfer", "propagate",
/// "metrics").
ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// Burn and image only.
struct BurnResult {
    holeburn::PopulationField pops;
    spectral::OpticalDepthProfile profile;
};
BurnResult run_burn(const ScenarioConfig& cfg);

}  // namespace afc::analysis
