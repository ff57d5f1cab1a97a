#include "afc/analysis/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "afc/common/error.hpp"

namespace afc::analysis {

namespace fs = std::filesystem;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
    return std::string(buf, end);
}

double parse_double(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
        text.remove_suffix(1);
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc{} || ptr != last)
        throw ConfigError("not a number: '" + std::string(text) + "'");
    return v;
}

namespace {

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

void write_text(const fs::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
    finish(out, path);
}

/// Line-oriented reader that tags errors with path:line.
class CsvReader {
public:
    explicit CsvReader(const fs::path& path) : path_(path), in_(path, std::ios::binary) {
        if (!in_) throw ConfigError(path.string() + ": cannot open for reading");
    }

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError(path_.string() + ":" + std::to_string(line_no_) + ": " + what);
    }

    std::vector<std::string> split(const std::string& line) const {
        std::vector<std::string> out;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            out.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return out;
    }

    double number(const std::string& field) const {
        try {
            return parse_double(field);
        } catch (const ConfigError& e) {
            fail(e.what());
        }
    }

    void expect_header(std::string_view header) {
        std::string line;
        if (!next(line)) fail("missing header");
        if (line != header) fail("expected header '" + std::string(header) + "'");
    }

    std::size_t line_no() const noexcept { return line_no_; }

private:
    fs::path path_;
    std::ifstream in_;
    std::size_t line_no_ = 0;
};

std::string csv_text_field(const std::string& s) {
    std::string clean = s;
    std::replace(clean.begin(), clean.end(), '\n', ' ');
    std::replace(clean.begin(), clean.end(), '\r', ' ');
    if (clean.find_first_of(",\"") == std::string::npos) return clean;
    std::string q = "\"";
    for (char c : clean) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

std::string csv_unquote(const std::string& s) {
    if (s.size() < 2 || s.front() != '"' || s.back() != '"') return s;
    std::string out;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        out += s[i];
        if (s[i] == '"' && s[i + 1] == '"') ++i;
    }
    return out;
}

}  // namespace

void write_profile_csv(const fs::path& path, const spectral::OpticalDepthProfile& p) {
    std::string text = "frequency_hz,od\n";
    for (std::size_t i = 0; i < p.od.size(); ++i)
        text += format_double(p.grid.frequency(i)) + ',' + format_double(p.od[i]) + '\n';
    write_text(path, text);
}

spectral::OpticalDepthProfile read_profile_csv(const fs::path& path) {
    CsvReader in(path);
    in.expect_header("frequency_hz,od");
    std::vector<double> f, od;
    std::string line;
    while (in.next(line)) {
        const auto fields = in.split(line);
        if (fields.size() != 2) in.fail("expected 2 fields, got " + std::to_string(fields.size()));
        f.push_back(in.number(fields[0]));
        od.push_back(in.number(fields[1]));
        if (!std::isfinite(f.back()) || !std::isfinite(od.back())) in.fail("non-finite value");
        if (od.back() < 0.0) in.fail("negative OD");
        if (f.size() > 1 && !(f.back() > f[f.size() - 2])) in.fail("frequencies must increase");
    }
    if (f.size() < 2) throw ConfigError(path.string() + ": need at least 2 data rows");
    const std::size_t n = f.size();
    const double spacing = (f.back() - f.front()) / static_cast<double>(n - 1);
    auto grid = spectral::grid_from_spacing(f.front(), spacing, n);
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(grid.frequency(i) - f[i]) > 1e-6 * spacing)
            throw ConfigError(path.string() + ":" + std::to_string(i + 2) +
                              ": frequency axis is not uniform");
    return spectral::OpticalDepthProfile{grid, std::move(od)};
}

void write_pops_csv(const fs::path& path, const holeburn::PopulationField& pops) {
    std::string text = "class_detuning_hz,n_half,n_three_half,n_five_half\n";
    for (std::size_t i = 0; i < pops.pops.size(); ++i) {
        const auto& p = pops.pops[i];
        text += format_double(pops.class_grid.frequency(i)) + ',' + format_double(p[0]) + ',' +
                format_double(p[1]) + ',' + format_double(p[2]) + '\n';
    }
    write_text(path, text);
}

void write_trace_csv(const fs::path& path, const echo::EchoTrace& trace) {
    std::string text = "time_s,intensity\n";
    for (std::size_t i = 0; i < trace.intensity.size(); ++i)
        text += format_double(trace.time(i)) + ',' + format_double(trace.intensity[i]) + '\n';
    write_text(path, text);
}

std::string metrics_json(const echo::EchoMetrics& m) {
    nlohmann::ordered_json j;
    j["eta_per_echo"] = m.eta_per_echo;
    j["eta_total"] = m.eta_total;
    j["transmitted_fraction"] = m.transmitted_fraction;
    j["n_visible"] = m.n_visible;
    j["tau_s"] = m.tau_s;
    return j.dump(2) + "\n";
}

void write_metrics_json(const fs::path& path, const echo::EchoMetrics& m) {
    write_text(path, metrics_json(m));
}

echo::EchoMetrics read_metrics_json(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open for reading");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    static const std::vector<std::string> keys = {"eta_per_echo", "eta_total",
                                                  "transmitted_fraction", "n_visible", "tau_s"};
    if (!j.is_object()) throw ConfigError(path.string() + ": expected a JSON object");
    for (const auto& [k, v] : j.items())
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            throw ConfigError(path.string() + ": unknown key '" + k + "'");
    echo::EchoMetrics m;
    try {
        m.eta_per_echo = j.at("eta_per_echo").get<std::vector<double>>();
        m.eta_total = j.at("eta_total").get<double>();
        m.transmitted_fraction = j.at("transmitted_fraction").get<double>();
        m.n_visible = j.at("n_visible").get<int>();
        m.tau_s = j.at("tau_s").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return m;
}

void write_sweep_csv(const fs::path& path, const std::vector<SweepRow>& rows) {
    std::string text(sweep_header);
    text += '\n';
    for (const auto& r : rows) {
        for (double v : {r.value, r.contrast, r.hole_width_hz, r.peak_od, r.eta1, r.eta2, r.eta3,
                         r.eta_total})
            text += format_double(v) + ',';
        text += std::to_string(r.n_visible) + ',' + csv_text_field(r.status) + '\n';
    }
    write_text(path, text);
}

std::vector<SweepRow> read_sweep_csv(const fs::path& path) {
    CsvReader in(path);
    in.expect_header(sweep_header);
    std::vector<SweepRow> rows;
    std::string line;
    while (in.next(line)) {
        // status is last and may contain commas when quoted
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (int k = 0; k < 9; ++k) {
            const auto comma = line.find(',', start);
            if (comma == std::string::npos) in.fail("expected 10 fields");
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        SweepRow r;
        double* dst[] = {&r.value, &r.contrast, &r.hole_width_hz, &r.peak_od,
                         &r.eta1,  &r.eta2,     &r.eta3,          &r.eta_total};
        for (int k = 0; k < 8; ++k) *dst[k] = in.number(fields[k]);
        const double nv = in.number(fields[8]);
        if (!(nv >= 0.0) || nv != std::floor(nv)) in.fail("n_visible must be a nonnegative integer");
        r.n_visible = static_cast<int>(nv);
        r.status = csv_unquote(line.substr(start));
        const double nan = std::numeric_limits<double>::quiet_NaN();
        r.errors = {nan, nan, nan, nan, nan};
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_sweep_errors_csv(const fs::path& path, const std::vector<SweepRow>& rows) {
    std::string text(sweep_errors_header);
    text += '\n';
    for (const auto& r : rows) {
        const auto& e = r.errors;
        text += format_double(r.value) + ',' + format_double(e.contrast) + ',' +
                format_double(e.eta1) + ',' + format_double(e.eta2) + ',' +
                format_double(e.eta3) + ',' + format_double(e.eta_total) + '\n';
    }
    write_text(path, text);
}

Table read_numeric_csv(const fs::path& path) {
    CsvReader in(path);
    std::string line;
    if (!in.next(line)) in.fail("missing header");
    Table t;
    t.columns = in.split(line);
    while (in.next(line)) {
        auto fields = in.split(line);
        if (fields.size() != t.columns.size())
            in.fail("expected " + std::to_string(t.columns.size()) + " fields");
        std::vector<double> row;
        for (const auto& f : fields) {
            try {
                row.push_back(parse_double(f));
            } catch (const ConfigError&) {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string svg_plot(const Table& t, std::size_t x, std::size_t y, const std::string& title) {
    if (x >= t.columns.size() || y >= t.columns.size())
        throw ConfigError("plot: column index out of range");
    constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& r : t.rows) {
        if (!std::isfinite(r[x]) || !std::isfinite(r[y])) continue;
        x0 = std::min(x0, r[x]); x1 = std::max(x1, r[x]);
        y0 = std::min(y0, r[y]); y1 = std::max(y1, r[y]);
    }
    if (!(x1 >= x0)) x0 = 0, x1 = 1;
    if (!(y1 >= y0)) y0 = 0, y1 = 1;
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    auto px = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };

    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\">"
      << title << "</text>\n"
      << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
      << H - T - B << "\" fill=\"none\" stroke=\"black\"/>\n";
    s << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << t.columns[x]
      << " [" << format_double(x0) << ", " << format_double(x1) << "]</text>\n";
    s << "<text x=\"14\" y=\"" << H / 2 << "\" transform=\"rotate(-90 14 " << H / 2
      << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << t.columns[y]
      << " [" << format_double(y0) << ", " << format_double(y1) << "]</text>\n";
    s << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\" points=\"";
    for (const auto& r : t.rows)
        if (std::isfinite(r[x]) && std::isfinite(r[y])) s << px(r[x]) << ',' << py(r[y]) << ' ';
    s << "\"/>\n</svg>\n";
    return s.str();
}

}  // namespace afc::analysis
