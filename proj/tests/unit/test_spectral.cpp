#include <doctest.h>

#include <cmath>
#include <numbers>

#include "afc/common/error.hpp"
#include "afc/spectral/grid.hpp"
#include "afc/spectral/hyperfine.hpp"
#include "afc/spectral/line.hpp"

using namespace afc;
using namespace afc::spectral;

TEST_SUITE("spectral") {

TEST_CASE("grid spacing and positions") {
    FrequencyGrid g(0.0, 10.0, 11);
    CHECK(g.spacing() == doctest::Approx(1.0));
    CHECK(g.first() == doctest::Approx(-5.0));
    CHECK(g.frequency(10) == doctest::Approx(5.0));
    CHECK(g.nearest(2.4) == 7);
    CHECK(g.nearest(-100.0) == 0);
    CHECK(g.nearest(100.0) == 10);
    CHECK(g.same_as(grid_from_spacing(-5.0, 1.0, 11)));
}

TEST_CASE("grid guard rejects coarse spacing") {
    CHECK_THROWS_AS(make_grid(0.0, 1e9, 1001, 1e6), GuardError);
    try {
        make_grid(0.0, 1e9, 1001, 1e6);
    } catch (const GuardError& e) {
        CHECK(e.guard() == "grid");
    }
    CHECK_NOTHROW(make_grid(0.0, 1e9, 4001, 1e6));
    CHECK_THROWS_AS(FrequencyGrid(0.0, 1.0, 1), GuardError);
}

TEST_CASE("transition table of the Pr:YSO preset") {
    // level energies written out by hand (MHz): ground 0, 10.2, 27.5;
    // excited 0, -4.6, -9.4
    const double expected[3][3] = {{0.0, -4.6, -9.4}, {-10.2, -14.8, -19.6}, {-27.5, -32.1, -36.9}};
    const auto table = transition_table(pr_yso_scheme());
    REQUIRE(table.size() == 9);
    for (const auto& t : table) {
        CHECK(t.offset_hz == doctest::Approx(expected[t.ground_index][t.excited_index] * 1e6).epsilon(1e-12));
    }
    // row-major order
    CHECK(table[4].ground_index == 1);
    CHECK(table[4].excited_index == 1);
    CHECK(table[1].strength == doctest::Approx(0.38));
    CHECK(table[3].strength == doctest::Approx(0.40 / 1.01));
}

TEST_CASE("strength rows normalize and branching columns sum to one") {
    std::vector<std::string> warn;
    const auto m = normalize_rows({{{2, 2, 0}, {0.5, 0.5, 0.0}, {0, 0, 1}}}, &warn);
    CHECK(warn.size() == 1);
    CHECK(m[0][0] == doctest::Approx(0.5));
    const auto s = pr_yso_scheme();
    for (int e = 0; e < 3; ++e) {
        double sum = 0.0;
        for (int g = 0; g < 3; ++g) sum += s.branching(e, g);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
    HyperfineScheme bad = s;
    bad.strength[0][0] = 0.9;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("line shapes") {
    InhomogeneousLine g{10e9, 6.0, LineShape::gaussian};
    CHECK(g.od_at(0.0) == doctest::Approx(6.0));
    CHECK(g.od_at(5e9) == doctest::Approx(3.0));
    InhomogeneousLine l{2e9, 4.0, LineShape::lorentzian};
    CHECK(l.od_at(1e9) == doctest::Approx(2.0));
    CHECK_THROWS_AS((InhomogeneousLine{-1.0, 1.0, LineShape::gaussian}.validate()), ConfigError);
}

TEST_CASE("unit-area Lorentzian integrates to one") {
    const double hw = 0.5e6;
    // closed form of the integral over [-a, a]: (2/pi) atan(a/hw)
    const double a = 1e9;
    FrequencyGrid grid(0.0, 2 * a, 2'000'001);
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = (i == 0 || i + 1 == grid.size()) ? 0.5 : 1.0;
        s += w * lorentz_area(grid.frequency(i), hw);
    }
    s *= grid.spacing();
    CHECK(s == doctest::Approx(2.0 / std::numbers::pi * std::atan(a / hw)).epsilon(1e-6));
    CHECK(lorentz_peak(hw, hw) == doctest::Approx(0.5));
}

TEST_CASE("profile integral and interpolation") {
    FrequencyGrid grid(0.0, 200e9, 400001);
    const auto p = line_profile(grid, InhomogeneousLine{10e9, 6.0, LineShape::gaussian});
    // Gaussian area: peak * fwhm * sqrt(pi / (4 ln 2))
    const double area = 6.0 * 10e9 * std::sqrt(std::numbers::pi / (4.0 * std::numbers::ln2));
    CHECK(p.integral() == doctest::Approx(area).epsilon(1e-9));
    CHECK(p.interpolate(0.0) == doctest::Approx(6.0));
    CHECK(p.interpolate(1e12) == 0.0);
}

}
