#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "afc/analysis/sweep.hpp"
#include "afc/echo/trace.hpp"
#include "afc/holeburn/types.hpp"

namespace afc::analysis {

/// Shortest decimal text that reads back to the same double ("nan", "inf"
/// and "-inf" for non-finite values). Locale-independent.
std::string format_double(double v);
/// Parses text written by format_double. Throws ConfigError on junk.
double parse_double(std::string_view text);

// All writers produce UTF-8, '\n'-terminated files and throw std::runtime_error
// naming the path on I/O failure. Readers throw ConfigError("path:line: ...").

void write_profile_csv(const std::filesystem::path& path, const spectral::OpticalDepthProfile& p);
spectral::OpticalDepthProfile read_profile_csv(const std::filesystem::path& path);

void write_pops_csv(const std::filesystem::path& path, const holeburn::PopulationField& pops);

void write_trace_csv(const std::filesystem::path& path, const echo::EchoTrace& trace);

/// Keys: eta_per_echo, eta_total, transmitted_fraction, n_visible, tau_s.
std::string metrics_json(const echo::EchoMetrics& m);
void write_metrics_json(const std::filesystem::path& path, const echo::EchoMetrics& m);
echo::EchoMetrics read_metrics_json(const std::filesystem::path& path);

inline constexpr std::string_view sweep_header =
    "value,contrast,hole_width_hz,peak_od,eta1,eta2,eta3,eta_total,n_visible,status";
inline constexpr std::string_view sweep_errors_header =
    "value,contrast_stderr,eta1_stderr,eta2_stderr,eta3_stderr,eta_total_stderr";

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path);
void write_sweep_errors_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

/// Numeric CSV with a header row; used by the plot command.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};
Table read_numeric_csv(const std::filesystem::path& path);

/// Static SVG line plot of column `y` against column `x`.
std::string svg_plot(const Table& t, std::size_t x, std::size_t y, const std::string& title);

}  // namespace afc::analysis
