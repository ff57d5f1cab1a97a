#include "afc/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <type_traits>
#include <sstream>

#include "afc/analysis/io.hpp"
#include "afc/common/error.hpp"

namespace afc::cli {

namespace fs = std::filesystem;
using analysis::SweepSpec;
using analysis::format_double;

std::string Location::str() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(column);
}

namespace {

Location at(const std::string& file, const YAML::Node& n) {
    const auto m = n.Mark();
    return {file, m.line + 1, m.column + 1};
}

[[noreturn]] void fail(const Location& loc, const std::string& key, const std::string& what) {
    throw ConfigError(loc.str() + ": " + key + ": " + what);
}

double number(const YAML::Node& n, const Location& loc, const std::string& key) {
    if (!n.IsScalar()) fail(loc, key, "expected a number");
    double v = 0.0;
    try {
        v = analysis::parse_double(n.Scalar());
    } catch (const ConfigError&) {
        fail(loc, key, "expected a number, got '" + n.Scalar() + "'");
    }
    if (!std::isfinite(v)) fail(loc, key, "must be finite");
    return v;
}

long long integer(const YAML::Node& n, const Location& loc, const std::string& key) {
    if (!n.IsScalar()) fail(loc, key, "expected an integer");
    const auto& s = n.Scalar();
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        fail(loc, key, "expected an integer, got '" + s + "'");
    return v;
}

bool boolean(const YAML::Node& n, const Location& loc, const std::string& key) {
    if (n.IsScalar()) {
        const auto& s = n.Scalar();
        if (s == "true") return true;
        if (s == "false") return false;
    }
    fail(loc, key, "expected true or false");
}

std::string text(const YAML::Node& n, const Location& loc, const std::string& key) {
    if (!n.IsScalar()) fail(loc, key, "expected a string");
    return n.Scalar();
}

std::vector<double> numbers(const YAML::Node& n, const Location& loc, const std::string& key) {
    if (!n.IsSequence()) fail(loc, key, "expected a list of numbers");
    std::vector<double> out;
    for (const auto& item : n) out.push_back(number(item, loc, key));
    return out;
}

std::array<double, 2> pair(const YAML::Node& n, const Location& loc, const std::string& key) {
    const auto v = numbers(n, loc, key);
    if (v.size() != 2) fail(loc, key, "expected 2 numbers");
    return {v[0], v[1]};
}

std::string show_list(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
    return s + "]";
}

using Cfg = analysis::ScenarioConfig;

// Sink for non-fatal load messages while a document is applied.
thread_local std::vector<std::string>* t_warnings = nullptr;

template <class Get>
KeySpec num(std::string section, std::string key, std::string doc, Get get) {
    KeySpec k{section, key, "number", std::move(doc), {}, {}};
    const std::string path = k.path();
    k.apply = [get, path](SweepSpec& s, const YAML::Node& n, const Location& loc) {
        get(s.base) = number(n, loc, path);
    };
    k.show = [get](const SweepSpec& s) { return format_double(get(const_cast<Cfg&>(s.base))); };
    return k;
}

template <class T, class Get>
KeySpec integral(std::string section, std::string key, std::string doc, Get get) {
    KeySpec k{section, key, "integer", std::move(doc), {}, {}};
    const std::string path = k.path();
    k.apply = [get, path](SweepSpec& s, const YAML::Node& n, const Location& loc) {
        const long long v = integer(n, loc, path);
        if constexpr (std::is_unsigned_v<T>) {
            if (v < 0) fail(loc, path, "must be >= 0");
        } else {
            if (v < std::numeric_limits<T>::min() || v > std::numeric_limits<T>::max())
                fail(loc, path, "out of range");
        }
        get(s.base) = static_cast<T>(v);
    };
    k.show = [get](const SweepSpec& s) { return std::to_string(get(const_cast<Cfg&>(s.base))); };
    return k;
}

std::vector<KeySpec> build_schema() {
    std::vector<KeySpec> v;

    // scheme
    v.push_back({"scheme", "preset", "string",
                 "named scheme applied before the other scheme keys (pr_yso)",
                 [](SweepSpec& s, const YAML::Node& n, const Location& loc) {
                     const auto name = text(n, loc, "scheme.preset");
                     if (name != "pr_yso") fail(loc, "scheme.preset", "unknown preset '" + name + "'");
                     s.base.scheme = spectral::pr_yso_scheme();
                 },
                 [](const SweepSpec&) { return std::string("pr_yso"); }});
    v.push_back({"scheme", "ground_splittings_hz", "[number, number]",
                 "ground splittings 1/2-3/2 and 3/2-5/2",
                 [](SweepSpec& s, const YAML::Node& n, const Location& loc) {
                     s.base.scheme.ground_splittings_hz = pair(n, loc, "scheme.ground_splittings_hz");
                 },
                 [](const SweepSpec& s) {
                     const auto& a = s.base.scheme.ground_splittings_hz;
                     return show_list({a[0], a[1]});
                 }});
    v.push_back({"scheme", "excited_splittings_hz", "[number, number]",
                 "excited splittings 1/2-3/2 and 3/2-5/2",
                 [](SweepSpec& s, const YAML::Node& n, const Location& loc) {
                     s.base.scheme.excited_splittings_hz = pair(n, loc, "scheme.excited_splittings_hz");
                 },
                 [](const SweepSpec& s) {
                     const auto& a = s.base.scheme.excited_splittings_hz;
                     return show_list({a[0], a[1]});
                 }});
    v.push_back({"scheme", "ground_order", "ascending|descending",
                 "sign of the ground ladder",
                 [](SweepSpec& s, const YAML::Node& n, const Location& loc) {
                     try {
                         s.base.scheme.ground_order = spectral::parse_ladder_order(text(n, loc, "scheme.ground_order"));
                     } catch (const Error& e) {
                         fail(loc, "scheme.ground_order", e.what());
                     }
                 },
                 [](const SweepSpec& s) { return std::string(spectral::to_string(s.base.scheme.ground_order)); }});
    v.push_back({"scheme", "excited_order", "ascending|descending",
                 "sign of the excited ladder",
                 [](SweepSpec& s, const YAML::Node& n, const Location& loc) {
                     try {
                         s.base.scheme.excited_order = spectral::parse_ladder_order(text(n, loc, "scheme.excited_order"));
                     } catch (const Error& e) {
                         fail(loc, "scheme.excited_order", e.what());
                     }
                 },
                 [](const SweepSpec& s) { return std::string(spectral::to_string(s.base.scheme.excited_order)); }});
    v.push_back({"scheme", "strength", "3x3 numbers",
                 "relative strengths f[ground][excited]; rows are normalized to 1",
                 [](SweepSpec& s, const YAML::Node& n, const Location& loc) {
                     if (!n.IsSequence() || n.size() != 3) fail(loc, "scheme.strength", "expected 3 rows");
                     spectral::StrengthMatrix m{};
                     for (std::size_t g = 0; g < 3; ++g) {
                         const auto row = numbers(n[g], loc, "scheme.strength");
                         if (row.size() != 3) fail(loc, "scheme.strength", "expected 3 entries per row");
                         for (std::size_t e = 0; e < 3; ++e) m[g][e] = row[e];
                     }
                     std::vector<std::string> warn;
                     try {
                         s.base.scheme.strength = spectral::normalize_rows(m, &warn);
                     } catch (const std::exception& e) {
                         fail(loc, "scheme.strength", e.what());
                     }
                     if (t_warnings)
                         for (auto& w : warn) t_warnings->push_back(loc.str() + ": scheme.strength: " + w);
                 },
                 [](const SweepSpec& s) {
                     std::string out = "[";
                     for (int g = 0; g < 3; ++g) {
                         const auto& r = s.base.scheme.strength[g];
                         out += (g ? ", " : "") + show_list({r[0], r[1], r[2]});
                     }
                     return out + "]";
                 }});

    // line
    v.push_back(num("line", "fwhm_hz", "inhomogeneous FWHM", [](Cfg& c) -> double& { return c.line.fwhm_hz; }));
    v.push_back(num("line", "peak_od", "optical depth at line center", [](Cfg& c) -> double& { return c.line.peak_od; }));
    v.push_back({"line", "shape", "gaussian|lorentzian", "inhomogeneous line shape",
                 [](SweepSpec& s, const YAML::Node& n, const Location& loc) {
                     try {
                         s.base.line.shape = spectral::parse_line_shape(text(n, loc, "line.shape"));
                     } catch (const Error& e) {
                         fail(loc, "line.shape", e.what());
                     }
                 },
                 [](const SweepSpec& s) { return std::string(spectral::to_string(s.base.line.shape)); }});

    // comb
    v.push_back(num("comb", "rep_rate_hz", "tooth spacing", [](Cfg& c) -> double& { return c.comb.rep_rate_hz; }));
    v.push_back(integral<int>("comb", "n_teeth_half", "teeth on each side of the center tooth",
                              [](Cfg& c) -> int& { return c.comb.n_teeth_half; }));
    v.push_back(num("comb", "center_offset_hz", "comb center relative to line center",
                    [](Cfg& c) -> double& { return c.comb.center_offset_hz; }));
    v.push_back(num("comb", "envelope_fwhm_hz", "Gaussian FWHM of the tooth weights",
                    [](Cfg& c) -> double& { return c.comb.envelope_fwhm_hz; }));
    v.push_back(num("comb", "tooth_width_hz", "Lorentzian FWHM of one burning tooth",
                    [](Cfg& c) -> double& { return c.comb.tooth_width_hz; }));

    // jitter
    v.push_back(num("jitter", "center_amplitude_hz", "uniform comb-center shift amplitude",
                    [](Cfg& c) -> double& { return c.jitter.center_amplitude_hz; }));
    v.push_back(num("jitter", "rep_rate_amplitude_hz", "uniform tooth-spacing excursion amplitude",
                    [](Cfg& c) -> double& { return c.jitter.rep_rate_amplitude_hz; }));
    v.push_back(num("jitter", "drift_hz_per_sqrt_s", "random-walk drift of the comb center",
                    [](Cfg& c) -> double& { return c.jitter.drift_hz_per_sqrt_s; }));
    v.push_back(num("jitter", "resample_interval_s", "time between jitter draws",
                    [](Cfg& c) -> double& { return c.jitter.resample_interval_s; }));
    v.push_back(integral<int>("jitter", "n_realizations", "jitter realizations averaged",
                              [](Cfg& c) -> int& { return c.jitter.n_realizations; }));
    v.push_back(integral<std::uint64_t>("jitter", "seed", "base RNG seed (overridden by --seed)",
                                        [](Cfg& c) -> std::uint64_t& { return c.jitter.seed; }));

    // burn
    v.push_back(num("burn", "pump_rate_hz", "excitation rate per unit strength at a tooth peak",
                    [](Cfg& c) -> double& { return c.burn.pump_rate; }));
    v.push_back(num("burn", "duration_s", "burn time", [](Cfg& c) -> double& { return c.burn.duration_s; }));
    v.push_back(num("burn", "dt_s", "burn step", [](Cfg& c) -> double& { return c.burn.dt_s; }));
    v.push_back(integral<int>("burn", "tooth_window", "teeth summed on each side of the nearest tooth",
                              [](Cfg& c) -> int& { return c.burn.tooth_window; }));
    v.push_back({"burn", "attenuate_pump", "bool",
                 "scale the pump by (1 - exp(-OD)) / OD of the current medium",
                 [](SweepSpec& s, const YAML::Node& n, const Location& loc) {
                     s.base.attenuate_pump = boolean(n, loc, "burn.attenuate_pump");
                 },
                 [](const SweepSpec& s) { return std::string(s.base.attenuate_pump ? "true" : "false"); }});

    // pulse
    v.push_back(num("pulse", "duration_fwhm_s", "input intensity FWHM",
                    [](Cfg& c) -> double& { return c.pulse.duration_fwhm_s; }));
    v.push_back(num("pulse", "center_offset_hz", "input carrier relative to line center",
                    [](Cfg& c) -> double& { return c.pulse.center_offset_hz; }));
    v.push_back(num("pulse", "amplitude", "input field amplitude", [](Cfg& c) -> double& { return c.pulse.amplitude; }));

    // echo
    v.push_back(num("echo", "record_length_s", "minimum time record (1 / grid spacing must reach it)",
                    [](Cfg& c) -> double& { return c.echo.record_length_s; }));
    v.push_back(num("echo", "threshold", "visibility threshold relative to the transmitted peak",
                    [](Cfg& c) -> double& { return c.echo.threshold; }));
    v.push_back(integral<int>("echo", "max_echoes", "echo windows evaluated",
                              [](Cfg& c) -> int& { return c.echo.max_echoes; }));

    // grid
    v.push_back(num("grid", "center_hz", "probe grid center", [](Cfg& c) -> double& { return c.grid.center_hz; }));
    v.push_back(num("grid", "span_hz", "probe grid span (last - first)", [](Cfg& c) -> double& { return c.grid.span_hz; }));
    v.push_back(integral<std::size_t>("grid", "n_points", "probe grid size",
                                      [](Cfg& c) -> std::size_t& { return c.grid.n_points; }));

    // analysis
    v.push_back(num("analysis", "contrast_window_hz", "window around the comb center for contrast and hole width",
                    [](Cfg& c) -> double& { return c.analysis.contrast_window_hz; }));

    // sweep
    v.push_back({"sweep", "variable", "burn_time|pump_rate|detuning",
                 "swept quantity: burn.duration_s, burn.pump_rate_hz, or comb and pulse center_offset_hz",
                 [](SweepSpec& s, const YAML::Node& n, const Location& loc) {
                     try {
                         s.variable = analysis::parse_sweep_variable(text(n, loc, "sweep.variable"));
                     } catch (const Error& e) {
                         fail(loc, "sweep.variable", e.what());
                     }
                 },
                 [](const SweepSpec& s) { return std::string(analysis::to_string(s.variable)); }});
    v.push_back({"sweep", "values", "list of numbers", "strictly monotone values (s, 1/s or Hz)",
                 [](SweepSpec& s, const YAML::Node& n, const Location& loc) {
                     s.values = numbers(n, loc, "sweep.values");
                 },
                 [](const SweepSpec& s) { return show_list(s.values); }});
    auto flag = [](const char* key, const char* doc, bool analysis::SweepOutputs::*member) {
        const std::string path = std::string("sweep.") + key;
        return KeySpec{"sweep", key, "bool", doc,
                       [member, path](SweepSpec& s, const YAML::Node& n, const Location& loc) {
                           s.outputs.*member = boolean(n, loc, path);
                       },
                       [member](const SweepSpec& s) { return std::string(s.outputs.*member ? "true" : "false"); }};
    };
    v.push_back(flag("save_spectra", "write point_<i>_comb.csv per row", &analysis::SweepOutputs::spectra));
    v.push_back(flag("save_traces", "write point_<i>_trace.csv per row", &analysis::SweepOutputs::traces));
    v.push_back(flag("save_metrics", "write point_<i>_metrics.json per row", &analysis::SweepOutputs::metrics));
    return v;
}

const KeySpec* find_key(const std::string& section, const std::string& key) {
    for (const auto& k : schema())
        if (k.section == section && k.key == key) return &k;
    return nullptr;
}

bool known_section(const std::string& s) {
    for (const auto& k : schema())
        if (k.section == s) return true;
    return false;
}

void apply_document(SweepSpec& spec, const YAML::Node& root, const std::string& label,
                    const fs::path& base_dir, bool allow_sweep, int depth) {
    if (depth > 8) throw ConfigError(label + ": extends chain deeper than 8 files");
    if (root.IsNull()) return;
    if (!root.IsMap()) throw ConfigError(at(label, root).str() + ": expected a mapping at top level");

    if (const auto ext = root["extends"]) {
        const auto loc = at(label, ext);
        const fs::path parent = base_dir / text(ext, loc, "extends");
        YAML::Node doc;
        try {
            doc = YAML::LoadFile(parent.string());
        } catch (const YAML::BadFile&) {
            fail(loc, "extends", "cannot read '" + parent.string() + "'");
        } catch (const YAML::Exception& e) {
            throw ConfigError(parent.string() + ":" + std::to_string(e.mark.line + 1) + ":" +
                              std::to_string(e.mark.column + 1) + ": " + e.msg);
        }
        apply_document(spec, doc, parent.string(), parent.parent_path(), allow_sweep, depth + 1);
    }

    for (const auto& sec : root) {
        const auto name = sec.first.as<std::string>();
        const auto loc = at(label, sec.first);
        if (name == "extends") continue;
        if (!known_section(name) || (name == "sweep" && !allow_sweep))
            fail(loc, name, name == "sweep" ? "sweep section is only valid in sweep files"
                                            : "unknown section");
        if (!sec.second.IsMap()) fail(at(label, sec.second), name, "expected a mapping");

        // presets first so explicit keys override them
        if (const auto p = sec.second["preset"]; p && name == "scheme")
            find_key("scheme", "preset")->apply(spec, p, at(label, p));
        for (const auto& kv : sec.second) {
            const auto key = kv.first.as<std::string>();
            if (name == "scheme" && key == "preset") continue;
            const auto* spec_key = find_key(name, key);
            if (!spec_key) fail(at(label, kv.first), name + "." + key, "unknown key");
            spec_key->apply(spec, kv.second, at(label, kv.second));
        }
    }
}

SweepSpec parse_root(const YAML::Node& root, const std::string& label, const fs::path& dir,
                     bool allow_sweep, std::vector<std::string>* warnings) {
    SweepSpec spec;
    t_warnings = warnings;
    try {
        apply_document(spec, root, label, dir, allow_sweep, 0);
    } catch (...) {
        t_warnings = nullptr;
        throw;
    }
    t_warnings = nullptr;
    try {
        if (allow_sweep) spec.validate();
        else spec.base.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(label + ": " + e.what());
    }
    return spec;
}

YAML::Node load_yaml(const fs::path& path) {
    try {
        return YAML::LoadFile(path.string());
    } catch (const YAML::BadFile&) {
        throw ConfigError(path.string() + ": cannot read file");
    } catch (const YAML::Exception& e) {
        throw ConfigError(path.string() + ":" + std::to_string(e.mark.line + 1) + ":" +
                          std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
}

}  // namespace

const std::vector<KeySpec>& schema() {
    static const std::vector<KeySpec> s = build_schema();
    return s;
}

std::string schema_help(bool include_sweep) {
    const SweepSpec defaults;
    std::ostringstream out;
    out << "Config keys (YAML; `extends: <file>` inherits another file):\n";
    std::string section;
    for (const auto& k : schema()) {
        if (k.section == "sweep" && !include_sweep) continue;
        if (k.section != section) {
            section = k.section;
            out << "  " << section << ":\n";
        }
        out << "    " << k.key << " (" << k.type << ", default " << k.show(defaults) << ")\n"
            << "        " << k.doc << "\n";
    }
    return out.str();
}

analysis::ScenarioConfig load_scenario(const fs::path& path, std::vector<std::string>* warnings) {
    return parse_root(load_yaml(path), path.string(), path.parent_path(), false, warnings).base;
}

SweepSpec load_sweep(const fs::path& path, std::vector<std::string>* warnings) {
    return parse_root(load_yaml(path), path.string(), path.parent_path(), true, warnings);
}

SweepSpec parse_config_text(const std::string& text, const std::string& name, bool allow_sweep,
                            std::vector<std::string>* warnings) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(name + ":" + std::to_string(e.mark.line + 1) + ":" +
                          std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
    return parse_root(root, name, fs::current_path(), allow_sweep, warnings);
}

std::string dump_config(const SweepSpec& spec, bool include_sweep) {
    std::string out, section;
    for (const auto& k : schema()) {
        if (k.key == "preset") continue;
        if (k.section == "sweep" && !include_sweep) continue;
        if (k.section != section) {
            section = k.section;
            out += section + ":\n";
        }
        out += "  " + k.key + ": " + k.show(spec) + "\n";
    }
    return out;
}

}  // namespace afc::cli
