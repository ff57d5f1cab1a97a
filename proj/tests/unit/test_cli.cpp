#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "afc/analysis/io.hpp"
#include "afc/cli/app.hpp"
#include "afc/cli/config.hpp"
#include "afc/common/error.hpp"

using namespace afc;
namespace fs = std::filesystem;

namespace {

const fs::path presets = fs::path(AFC_SOURCE_DIR) / "presets";

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run sim(std::vector<std::string> args) {
    args.insert(args.begin(), "afc_sim");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path workdir(const std::string& name) {
    const auto d = fs::temp_directory_path() / "afc_sim_cli" / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Small scenario file next to the presets it extends.
fs::path small_scenario(const fs::path& dir, const std::string& extra = "") {
    const auto p = dir / "small.yaml";
    std::ofstream(p) << "extends: " << (presets / "paper_fig3a_center.yaml").string() << "\n"
                     << "comb:\n  n_teeth_half: 8\n"
                     << "burn:\n  duration_s: 0.1\n  attenuate_pump: false\n"
                     << "grid:\n  span_hz: 32767.75e6\n  n_points: 131072\n"
                     << "analysis:\n  contrast_window_hz: 0.5e9\n"
                     << extra;
    return p;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("presets load and validate") {
    for (const char* name : {"pr_yso_default.yaml", "paper_fig3a_center.yaml", "paper_fig3a_8p8ghz.yaml"}) {
        CHECK_NOTHROW(cli::load_scenario(presets / name));
    }
    const auto c = cli::load_scenario(presets / "paper_fig3a_8p8ghz.yaml");
    CHECK(c.comb.center_offset_hz == 8.8e9);
    CHECK(c.pulse.center_offset_hz == 8.8e9);
    CHECK(c.attenuate_pump);
    for (const char* name : {"fig2a_burn_time.yaml", "fig2b_pump_rate.yaml", "fig2c_detuning.yaml", "quick_detuning.yaml"}) {
        CHECK_NOTHROW(cli::load_sweep(presets / "sweeps" / name));
    }
}

TEST_CASE("schema errors carry locations") {
    auto expect = [](const std::string& text, const std::string& needle) {
        try {
            cli::parse_config_text(text, "cfg.yaml", false);
            FAIL("expected ConfigError for: " << text);
        } catch (const ConfigError& e) {
            INFO(e.what());
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect("comb:\n  rep_rate_hz: 80e6\n  bogus: 1\n", "cfg.yaml:3:3: comb.bogus: unknown key");
    expect("combs:\n  rep_rate_hz: 1\n", "cfg.yaml:1:1: combs: unknown section");
    expect("comb:\n  rep_rate_hz: fast\n", "cfg.yaml:2:16: comb.rep_rate_hz: expected a number");
    expect("comb:\n  n_teeth_half: 2.5\n", "comb.n_teeth_half: expected an integer");
    expect("comb:\n  rep_rate_hz: -1\n", "comb.rep_rate_hz must be > 0");
    expect("burn:\n  attenuate_pump: maybe\n", "burn.attenuate_pump: expected true or false");
    expect("sweep:\n  variable: detuning\n", "only valid in sweep files");
    expect("scheme:\n  strength: [[1, 0], [0, 1, 0], [0, 0, 1]]\n", "scheme.strength");

    std::vector<std::string> warn;
    const auto spec = cli::parse_config_text("scheme:\n  strength: [[2, 0, 0], [0, 1, 0], [0, 0, 1]]\n",
                                             "cfg.yaml", false, &warn);
    CHECK(warn.size() == 1);
    CHECK(spec.base.scheme.strength[0][0] == 1.0);
}

TEST_CASE("every command documents every config key") {
    for (const char* cmd : {"burn", "echo", "sweep", "oracle", "plot"}) {
        const auto r = sim({cmd, "--help"});
        CHECK(r.code == 0);
        for (const auto& k : cli::schema()) {
            if (k.section == "sweep" && std::string(cmd) != "sweep") continue;
            INFO(cmd << " " << k.path());
            CHECK(r.out.find("  " + k.section + ":") != std::string::npos);
            CHECK(r.out.find("    " + k.key + " (") != std::string::npos);
        }
    }
}

TEST_CASE("burn writes both CSVs and is byte-stable") {
    const auto d = workdir("burn");
    const auto cfg = small_scenario(d);
    auto r = sim({"burn", "--config", cfg.string(), "--out", (d / "a").string(), "--quiet"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(fs::exists(d / "a_comb.csv"));
    CHECK(fs::exists(d / "a_pops.csv"));
    CHECK(slurp(d / "a_pops.csv").rfind("class_detuning_hz,n_half,n_three_half,n_five_half\n", 0) == 0);
    r = sim({"burn", "-c", cfg.string(), "-o", (d / "b").string(), "-q"});
    CHECK(slurp(d / "a_comb.csv") == slurp(d / "b_comb.csv"));
    r = sim({"burn", "-c", cfg.string(), "-o", (d / "c").string(), "-q", "--seed", "77"});
    CHECK(r.code == 0);
    CHECK(slurp(d / "a_comb.csv") != slurp(d / "c_comb.csv"));
}

TEST_CASE("exit codes") {
    const auto d = workdir("codes");
    SUBCASE("config error") {
        std::ofstream(d / "bad.yaml") << "comb:\n  nope: 1\n";
        const auto r = sim({"burn", "-c", (d / "bad.yaml").string(), "-o", (d / "x").string()});
        CHECK(r.code == 2);
        CHECK(r.err.find("bad.yaml:2:3") != std::string::npos);
    }
    SUBCASE("under-resolved grid") {
        const auto cfg = small_scenario(d, "comb:\n  tooth_width_hz: 0.5e6\n");
        const auto r = sim({"burn", "-c", cfg.string(), "-o", (d / "x").string()});
        CHECK(r.code == 3);
        CHECK(r.err.find("grid") != std::string::npos);
    }
    SUBCASE("wrap-around") {
        // one-sample teeth on a 2 MHz grid: the echo train never decays
        // within the 500 ns record
        const auto p = d / "ring.csv";
        const spectral::FrequencyGrid g(0.0, 2e6 * 16384, 16385);
        spectral::OpticalDepthProfile prof{g, std::vector<double>(g.size())};
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double nu = g.frequency(i);
            if (std::abs(std::remainder(nu, 80e6)) < 1e3) prof.od[i] = 20.0 * std::exp(-std::pow(nu / 4e9, 2));
        }
        analysis::write_profile_csv(p, prof);
        const auto cfg = small_scenario(d);
        const auto r = sim({"echo", "-c", cfg.string(), "--comb", p.string(), "-o", (d / "x").string()});
        CHECK(r.code == 4);
        CHECK(r.err.find("wrap") != std::string::npos);
    }
    SUBCASE("malformed stored profile") {
        std::ofstream(d / "m.csv") << "frequency_hz,od\n0,1\n1,x\n";
        const auto cfg = small_scenario(d);
        const auto r = sim({"echo", "-c", cfg.string(), "--comb", (d / "m.csv").string(), "-o", (d / "x").string()});
        CHECK(r.code == 2);
        CHECK(r.err.find("m.csv:3") != std::string::npos);
    }
    SUBCASE("unknown flag") {
        CHECK(sim({"burn", "--frobnicate"}).code == 2);
        CHECK(sim({}).code == 2);
    }
}

TEST_CASE("echo on a stored flat profile has no echoes") {
    const auto d = workdir("echo_flat");
    const spectral::FrequencyGrid g(0.0, 32767.75e6, 131072);
    const auto prof = spectral::line_profile(g, spectral::InhomogeneousLine{6e9, 2.0, spectral::LineShape::gaussian});
    analysis::write_profile_csv(d / "flat.csv", prof);
    const auto cfg = small_scenario(d);
    const auto r = sim({"echo", "-c", cfg.string(), "--comb", (d / "flat.csv").string(), "-o", (d / "f").string(), "-q"});
    REQUIRE(r.code == 0);
    const auto m = analysis::read_metrics_json(d / "f_metrics.json");
    CHECK(m.eta_total < 1e-4);
    CHECK(m.n_visible == 0);
    CHECK(slurp(d / "f_trace.csv").rfind("time_s,intensity\n", 0) == 0);
}

TEST_CASE("echo runs the full scenario without a stored comb") {
    const auto d = workdir("echo_full");
    const auto cfg = small_scenario(d);
    const auto r = sim({"echo", "-c", cfg.string(), "-o", (d / "e").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("eta1") != std::string::npos);
    CHECK(analysis::read_metrics_json(d / "e_metrics.json").eta_per_echo.at(0) > 0.0);
}

TEST_CASE("sweep output is independent of --jobs") {
    const auto d = workdir("sweep");
    const auto spec = d / "spec.yaml";
    std::ofstream(spec) << "extends: " << small_scenario(d).string() << "\n"
                        << "sweep:\n  variable: detuning\n  values: [0.0, 1.0e9, 2.0e9]\n  save_metrics: true\n";
    auto a = sim({"sweep", "-c", spec.string(), "-o", (d / "j1").string(), "--jobs", "1", "-q"});
    auto b = sim({"sweep", "-c", spec.string(), "-o", (d / "j3").string(), "--jobs", "3", "-q"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(slurp(d / "j1" / "sweep.csv") == slurp(d / "j3" / "sweep.csv"));
    CHECK(slurp(d / "j1" / "point_2_metrics.json") == slurp(d / "j3" / "point_2_metrics.json"));
    CHECK(analysis::read_sweep_csv(d / "j1" / "sweep.csv").size() == 3);
}

TEST_CASE("sweep exit codes") {
    const auto d = workdir("sweep_codes");
    const auto base = small_scenario(d).string();
    std::ofstream(d / "empty.yaml") << "extends: " << base << "\nsweep:\n  variable: detuning\n  values: []\n";
    CHECK(sim({"sweep", "-c", (d / "empty.yaml").string(), "-o", (d / "e").string()}).code == 2);
    std::ofstream(d / "dead.yaml") << "extends: " << base << "\nsweep:\n  variable: detuning\n  values: [15.0e9, 16.0e9]\n";
    const auto r = sim({"sweep", "-c", (d / "dead.yaml").string(), "-o", (d / "x").string(), "-q"});
    CHECK(r.code == 5);
    CHECK(fs::exists(d / "x" / "sweep.csv"));
}

TEST_CASE("oracle command") {
    const auto d = workdir("oracle");
    const auto cfg = small_scenario(d);
    CHECK(sim({"oracle", "-c", cfg.string(), "--atoms", "1"}).code == 3);

    const spectral::FrequencyGrid g(0.0, 32767.75e6, 131072);
    const auto flat = spectral::line_profile(g, spectral::InhomogeneousLine{6e9, 2.0, spectral::LineShape::gaussian});
    analysis::write_profile_csv(d / "flat.csv", flat);
    auto r = sim({"oracle", "-c", cfg.string(), "--comb", (d / "flat.csv").string(), "-o", (d / "o").string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("echoes_present false") != std::string::npos);
    CHECK(fs::exists(d / "o_oracle.json"));
}

TEST_CASE("plot command writes SVG") {
    const auto d = workdir("plot");
    std::ofstream(d / "t.csv") << "time_s,intensity\n0,1\n1e-9,0.5\n2e-9,0.25\n";
    const auto r = sim({"plot", "-i", (d / "t.csv").string(), "-o", (d / "t.svg").string(), "-q"});
    CHECK(r.code == 0);
    CHECK(slurp(d / "t.svg").find("<svg") == 0);
    CHECK(sim({"plot", "-i", (d / "t.csv").string(), "-y", "nope"}).code == 2);
}

}
