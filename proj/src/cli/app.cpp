#include "afc/cli/app.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "afc/analysis/io.hpp"
#include "afc/analysis/scenario.hpp"
#include "afc/analysis/sweep.hpp"
#include "afc/cli/config.hpp"
#include "afc/common/error.hpp"
#include "afc/common/parallel.hpp"
#include "afc/echo/oracle.hpp"

namespace afc::cli {

namespace fs = std::filesystem;
using analysis::format_double;

namespace {

struct Globals {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    int jobs = 1;
    bool quiet = false;
};

int exit_code_for(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::config: return exit_config;
    case ErrorKind::guard: return exit_guard;
    case ErrorKind::causality: return exit_causality;
    case ErrorKind::oracle: return exit_oracle;
    }
    return 1;
}

fs::path with_suffix(const std::string& prefix, const char* suffix) {
    return fs::path(prefix + suffix);
}

analysis::ScenarioConfig scenario(const Globals& g, std::ostream& err) {
    if (g.config.empty()) throw ConfigError("--config is required");
    std::vector<std::string> warnings;
    auto cfg = load_scenario(g.config, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << "\n";
    if (g.seed) cfg.jitter.seed = *g.seed;
    return cfg;
}

/// Trace samples with -record/20 <= t <= record.
echo::EchoTrace clip_trace(const echo::EchoTrace& t, double record_s) {
    echo::EchoTrace out = t;
    out.intensity.clear();
    std::size_t first = t.intensity.size();
    for (std::size_t i = 0; i < t.intensity.size(); ++i) {
        const double time = t.time(i);
        if (time < -record_s / 20.0 || time > record_s) continue;
        if (first == t.intensity.size()) first = i;
        out.intensity.push_back(t.intensity[i]);
    }
    out.zero_index = first <= t.zero_index ? t.zero_index - first : 0;
    return out;
}

void print_metrics(std::ostream& out, const echo::EchoMetrics& m) {
    out << "tau_s " << format_double(m.tau_s) << "\n";
    for (std::size_t k = 0; k < std::min<std::size_t>(3, m.eta_per_echo.size()); ++k)
        out << "eta" << k + 1 << " " << format_double(m.eta_per_echo[k]) << "\n";
    out << "eta_total " << format_double(m.eta_total) << "\n"
        << "transmitted_fraction " << format_double(m.transmitted_fraction) << "\n"
        << "n_visible " << m.n_visible << "\n";
}

int cmd_burn(const Globals& g, std::ostream& out, std::ostream& err) {
    const auto cfg = scenario(g, err);
    const auto res = analysis::run_burn(cfg);
    const std::string prefix = g.out.empty() ? "afc" : g.out;
    analysis::write_profile_csv(with_suffix(prefix, "_comb.csv"), res.profile);
    analysis::write_pops_csv(with_suffix(prefix, "_pops.csv"), res.pops);
    if (!g.quiet) {
        const auto s = analysis::summarize_comb(res.profile, cfg);
        out << "contrast " << format_double(s.contrast) << "\n"
            << "hole_width_hz " << format_double(s.hole_width_hz) << "\n"
            << "peak_od " << format_double(s.peak_od) << "\n"
            << "wrote " << prefix << "_comb.csv " << prefix << "_pops.csv\n";
    }
    return exit_ok;
}

int cmd_echo(const Globals& g, const std::string& comb_csv, std::ostream& out, std::ostream& err) {
    const auto cfg = scenario(g, err);
    echo::EchoTrace trace;
    echo::EchoMetrics metrics;
    if (!comb_csv.empty()) {
        const auto profile = analysis::read_profile_csv(comb_csv);
        auto r = analysis::run_echo(profile, cfg);
        trace = std::move(r.trace);
        metrics = std::move(r.metrics);
    } else {
        auto r = analysis::run_scenario(cfg);
        trace = std::move(r.trace);
        metrics = std::move(r.metrics);
    }
    const std::string prefix = g.out.empty() ? "afc" : g.out;
    analysis::write_trace_csv(with_suffix(prefix, "_trace.csv"), clip_trace(trace, cfg.echo.record_length_s));
    analysis::write_metrics_json(with_suffix(prefix, "_metrics.json"), metrics);
    if (!g.quiet) {
        print_metrics(out, metrics);
        out << "wrote " << prefix << "_trace.csv " << prefix << "_metrics.json\n";
    }
    return exit_ok;
}

int cmd_sweep(const Globals& g, std::ostream& out, std::ostream& err) {
    if (g.config.empty()) throw ConfigError("--config is required");
    std::vector<std::string> warnings;
    auto spec = load_sweep(g.config, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << "\n";
    if (g.seed) spec.base.jitter.seed = *g.seed;
    if (g.jobs < 1) throw ConfigError("--jobs must be >= 1");

    const fs::path dir = g.out.empty() ? fs::path("sweep_out") : fs::path(g.out);
    fs::create_directories(dir);
    const int cap = parallel::env_cap();
    const int jobs = cap > 0 ? std::min(g.jobs, cap) : g.jobs;

    auto sink = [&](std::size_t i, const analysis::ScenarioConfig& cfg, const analysis::ScenarioResult& r) {
        const std::string stem = (dir / ("point_" + std::to_string(i))).string();
        if (spec.outputs.spectra) analysis::write_profile_csv(stem + "_comb.csv", r.profile);
        if (spec.outputs.traces)
            analysis::write_trace_csv(stem + "_trace.csv", clip_trace(r.trace, cfg.echo.record_length_s));
        if (spec.outputs.metrics) analysis::write_metrics_json(stem + "_metrics.json", r.metrics);
    };
    const auto rows = analysis::run_sweep(spec, jobs, sink);
    analysis::write_sweep_csv(dir / "sweep.csv", rows);
    analysis::write_sweep_errors_csv(dir / "sweep_errors.csv", rows);

    std::size_t ok = 0;
    for (const auto& r : rows) {
        if (r.ok()) ++ok;
        else err << "row value " << format_double(r.value) << ": " << r.status << "\n";
    }
    if (!g.quiet) {
        out << std::string(analysis::sweep_header) << "\n";
        for (const auto& r : rows)
            out << format_double(r.value) << ',' << format_double(r.contrast) << ','
                << format_double(r.hole_width_hz) << ',' << format_double(r.peak_od) << ','
                << format_double(r.eta1) << ',' << format_double(r.eta2) << ','
                << format_double(r.eta3) << ',' << format_double(r.eta_total) << ','
                << r.n_visible << ',' << r.status << "\n";
        out << ok << "/" << rows.size() << " rows ok; wrote " << (dir / "sweep.csv").string() << "\n";
    }
    return ok > 0 ? exit_ok : exit_all_rows_failed;
}

int cmd_oracle(const Globals& g, const std::string& comb_csv, std::size_t n_atoms, int n_echoes,
               std::ostream& out, std::ostream& err) {
    const auto cfg = scenario(g, err);
    const auto profile = comb_csv.empty() ? analysis::run_burn(cfg).profile
                                          : analysis::read_profile_csv(comb_csv);
    const auto rep = echo::compare_with_oracle(profile, cfg.pulse, n_atoms, 1.0 / cfg.comb.rep_rate_hz,
                                               n_echoes);
    if (!g.quiet) {
        out << "n_atoms " << rep.n_atoms << "\n"
            << "correlation " << std::setprecision(6) << std::fixed << rep.correlation << "\n"
            << std::defaultfloat
            << "echoes_present " << (rep.echoes_present ? "true" : "false") << "\n"
            << "peaks_compared " << rep.peaks_compared << "\n"
            << "max_peak_offset_steps " << rep.max_peak_offset_steps << "\n";
        for (std::size_t k = 0; k < rep.fft_peak_times_s.size(); ++k)
            out << "peak " << k + 1 << " fft_s " << format_double(rep.fft_peak_times_s[k])
                << " oracle_s " << format_double(rep.oracle_peak_times_s[k]) << "\n";
        out << (rep.passed ? "PASS" : "FAIL") << "\n";
    }
    if (!g.out.empty()) {
        nlohmann::ordered_json j;
        j["n_atoms"] = rep.n_atoms;
        j["correlation"] = rep.correlation;
        j["max_peak_offset_steps"] = rep.max_peak_offset_steps;
        j["peaks_compared"] = rep.peaks_compared;
        j["dt_s"] = rep.dt_s;
        j["echoes_present"] = rep.echoes_present;
        j["passed"] = rep.passed;
        j["fft_peak_times_s"] = rep.fft_peak_times_s;
        j["oracle_peak_times_s"] = rep.oracle_peak_times_s;
        std::ofstream f(g.out + "_oracle.json", std::ios::binary);
        if (!f) throw std::runtime_error(g.out + "_oracle.json: cannot open for writing");
        f << j.dump(2) << "\n";
    }
    if (!rep.passed) err << "oracle: FFT path and sum-over-atoms disagree\n";
    return rep.passed ? exit_ok : exit_oracle;
}

std::size_t column_index(const analysis::Table& t, const std::string& name) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == name) return i;
    throw ConfigError("plot: no column '" + name + "'");
}

int cmd_plot(const Globals& g, const std::string& input, std::string x, std::string y,
             std::ostream& out) {
    if (input.empty()) throw ConfigError("plot: --input is required");
    const auto table = analysis::read_numeric_csv(input);
    if (table.columns.size() < 2) throw ConfigError("plot: need at least 2 columns");
    if (x.empty()) x = table.columns[0];
    if (y.empty()) y = table.columns[1];
    const auto svg = analysis::svg_plot(table, column_index(table, x), column_index(table, y),
                                        fs::path(input).filename().string());
    const std::string path = g.out.empty() ? fs::path(input).replace_extension(".svg").string() : g.out;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error(path + ": cannot open for writing");
    f << svg;
    if (!g.quiet) out << "wrote " << path << "\n";
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Atomic frequency comb memory simulator: hole burning, OD imaging and echo propagation"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("-c,--config", g.config, "scenario or sweep YAML file");
    app.add_option("--seed", g.seed, "override jitter.seed");
    app.add_option("-o,--out", g.out, "output prefix (burn, echo, oracle), directory (sweep) or file (plot)");
    app.add_option("-j,--jobs", g.jobs, "sweep worker count, capped by AFC_SIM_THREADS")->check(CLI::PositiveNumber);
    app.add_flag("-q,--quiet", g.quiet, "suppress summaries on stdout");

    const std::string scenario_keys = schema_help(false);
    const std::string sweep_keys = schema_help(true);

    auto* burn = app.add_subcommand("burn", "reset, burn and image; writes <out>_comb.csv and <out>_pops.csv");
    burn->footer(scenario_keys);

    std::string comb_csv;
    auto* echo_cmd = app.add_subcommand("echo", "propagate a pulse; writes <out>_trace.csv and <out>_metrics.json");
    echo_cmd->add_option("--comb", comb_csv, "stored OD profile (frequency_hz,od); skips the burn");
    echo_cmd->footer(scenario_keys);

    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep; writes <out>/sweep.csv");
    sweep->footer(sweep_keys);

    std::string oracle_comb;
    std::size_t n_atoms = 2000;
    int n_echoes = 4;
    auto* oracle = app.add_subcommand("oracle", "compare FFT propagation with the sum-over-atoms model");
    oracle->add_option("--atoms", n_atoms, "atoms drawn from the comb (>= 16)")->capture_default_str();
    oracle->add_option("--echoes", n_echoes, "echo windows compared")->capture_default_str()->check(CLI::PositiveNumber);
    oracle->add_option("--comb", oracle_comb, "stored OD profile instead of burning");
    oracle->footer(scenario_keys);

    std::string plot_input, plot_x, plot_y;
    auto* plot = app.add_subcommand("plot", "static SVG line plot from a CSV file");
    plot->add_option("-i,--input", plot_input, "CSV with a header row");
    plot->add_option("-x", plot_x, "x column (default: first)");
    plot->add_option("-y", plot_y, "y column (default: second)");
    plot->footer(scenario_keys);

    for (auto* sub : {burn, echo_cmd, sweep, oracle, plot}) sub->fallthrough();

    if (!args.empty()) app.name(fs::path(args.front()).filename().string());
    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_config;
    }

    try {
        if (*burn) return cmd_burn(g, out, err);
        if (*echo_cmd) return cmd_echo(g, comb_csv, out, err);
        if (*sweep) return cmd_sweep(g, out, err);
        if (*oracle) return cmd_oracle(g, oracle_comb, n_atoms, n_echoes, out, err);
        if (*plot) return cmd_plot(g, plot_input, plot_x, plot_y, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_config;
}

}  // namespace afc::cli
