#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace afc::spectral {

using StrengthMatrix = std::array<std::array<double, 3>, 3>;  // [ground][excited]

/// Direction in which hyperfine level energy grows with |m_I|
/// (+-1/2, +-3/2, +-5/2).
enum class LadderOrder { ascending, descending };

LadderOrder parse_ladder_order(std::string_view name);
std::string_view to_string(LadderOrder order) noexcept;

/// Ground and excited hyperfine splittings plus relative oscillator
/// strengths f[g][e]. Indices 0, 1, 2 stand for +-1/2, +-3/2, +-5/2.
///
/// Level energies (Hz) are 0, s12, s12 + s35 along each ladder, negated for
/// a descending ladder. Rows of `strength` sum to one, so every ion carries
/// the same total absorption whatever its ground state.
struct HyperfineScheme {
    std::array<double, 2> ground_splittings_hz{};
    std::array<double, 2> excited_splittings_hz{};
    StrengthMatrix strength{};
    LadderOrder ground_order = LadderOrder::ascending;
    LadderOrder excited_order = LadderOrder::ascending;

    /// Checks splittings >= 0, strengths >= 0, rows summing to 1 within 1e-9.
    void validate() const;

    double ground_energy(int g) const noexcept;
    double excited_energy(int e) const noexcept;

    /// Transition frequency of |g> -> |e> relative to |+-1/2,g> -> |+-1/2,e>.
    double offset(int g, int e) const noexcept {
        return excited_energy(e) - ground_energy(g);
    }

    /// Branching ratio e -> g from column-normalized strengths.
    double branching(int e, int g) const noexcept;
};

/// Scales each row of `raw` to unit sum. Rows that deviated from one by more
/// than 5% are reported in `warnings`. Throws on negative entries or zero rows.
StrengthMatrix normalize_rows(const StrengthMatrix& raw, std::vector<std::string>* warnings);

struct TransitionEntry {
    int ground_index;
    int excited_index;
    double offset_hz;
    double strength;
};

/// The nine g -> e transitions in row-major order (g outer, e inner).
std::vector<TransitionEntry> transition_table(const HyperfineScheme& scheme);

/// Named presets for the 3H4(1) -> 1D2(1) transition of Pr:YSO (site 1).
/// Splittings 10.2/17.3 MHz (ground) and 4.6/4.8 MHz (excited); strength
/// table from published absorption measurements on this crystal.
HyperfineScheme pr_yso_scheme();
StrengthMatrix pr_yso_strengths();

}  // namespace afc::spectral
