#include "afc/spectral/hyperfine.hpp"

#include <cmath>
#include <sstream>

#include "afc/common/error.hpp"

namespace afc::spectral {

LadderOrder parse_ladder_order(std::string_view name) {
    if (name == "ascending") return LadderOrder::ascending;
    if (name == "descending") return LadderOrder::descending;
    throw ConfigError("unknown ladder order '" + std::string(name) +
                      "' (expected ascending or descending)");
}

std::string_view to_string(LadderOrder order) noexcept {
    return order == LadderOrder::ascending ? "ascending" : "descending";
}

void HyperfineScheme::validate() const {
    for (double s : ground_splittings_hz)
        if (!std::isfinite(s) || s < 0.0) throw ConfigError("ground splittings must be >= 0");
    for (double s : excited_splittings_hz)
        if (!std::isfinite(s) || s < 0.0) throw ConfigError("excited splittings must be >= 0");
    for (int g = 0; g < 3; ++g) {
        double row = 0.0;
        for (int e = 0; e < 3; ++e) {
            const double f = strength[g][e];
            if (!std::isfinite(f) || f < 0.0)
                throw ConfigError("oscillator strengths must be finite and >= 0");
            row += f;
        }
        if (std::abs(row - 1.0) > 1e-9) {
            std::ostringstream msg;
            msg << "strength row " << g << " sums to " << row << ", expected 1";
            throw ConfigError(msg.str());
        }
    }
    for (int e = 0; e < 3; ++e) {
        if (strength[0][e] + strength[1][e] + strength[2][e] <= 0.0)
            throw ConfigError("every excited state needs a nonzero decay channel");
    }
}

namespace {

double ladder_energy(const std::array<double, 2>& s, LadderOrder order, int level) noexcept {
    double e = 0.0;
    if (level >= 1) e += s[0];
    if (level >= 2) e += s[1];
    return order == LadderOrder::ascending ? e : -e;
}

}  // namespace

double HyperfineScheme::ground_energy(int g) const noexcept {
    return ladder_energy(ground_splittings_hz, ground_order, g);
}

double HyperfineScheme::excited_energy(int e) const noexcept {
    return ladder_energy(excited_splittings_hz, excited_order, e);
}

double HyperfineScheme::branching(int e, int g) const noexcept {
    const double col = strength[0][e] + strength[1][e] + strength[2][e];
    return strength[g][e] / col;
}

StrengthMatrix normalize_rows(const StrengthMatrix& raw, std::vector<std::string>* warnings) {
    StrengthMatrix out{};
    for (int g = 0; g < 3; ++g) {
        double row = 0.0;
        for (int e = 0; e < 3; ++e) {
            if (!std::isfinite(raw[g][e]) || raw[g][e] < 0.0)
                throw ConfigError("oscillator strengths must be finite and >= 0");
            row += raw[g][e];
        }
        if (!(row > 0.0)) throw ConfigError("oscillator strength row is all zero");
        if (warnings != nullptr && std::abs(row - 1.0) > 0.05) {
            std::ostringstream msg;
            msg << "strength row " << g << " sums to " << row << "; renormalized to 1";
            warnings->push_back(msg.str());
        }
        for (int e = 0; e < 3; ++e) out[g][e] = raw[g][e] / row;
    }
    return out;
}

std::vector<TransitionEntry> transition_table(const HyperfineScheme& scheme) {
    scheme.validate();
    std::vector<TransitionEntry> table;
    table.reserve(9);
    for (int g = 0; g < 3; ++g)
        for (int e = 0; e < 3; ++e)
            table.push_back({g, e, scheme.offset(g, e), scheme.strength[g][e]});
    return table;
}

StrengthMatrix pr_yso_strengths() {
    return {{{0.55, 0.38, 0.07}, {0.40, 0.60, 0.01}, {0.05, 0.02, 0.93}}};
}

HyperfineScheme pr_yso_scheme() {
    HyperfineScheme s;
    s.ground_splittings_hz = {10.2e6, 17.3e6};
    s.excited_splittings_hz = {4.6e6, 4.8e6};
    s.strength = normalize_rows(pr_yso_strengths(), nullptr);
    s.ground_order = LadderOrder::ascending;
    s.excited_order = LadderOrder::descending;
    return s;
}

}  // namespace afc::spectral
