#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "afc/echo/pulse.hpp"
#include "afc/spectral/line.hpp"

namespace afc::echo {

struct Atom {
    double detuning_hz = 0.0;
    double weight = 1.0;
};

/// |sum_j w_j a(delta_j) exp(i 2 pi delta_j t)|^2 at each t, normalized to a
/// peak of 1 (all zeros stay zero). a is the pulse field spectrum.
std::vector<double> sum_over_atoms_oracle(std::span<const Atom> atoms, const InputPulse& pulse,
                                          std::span<const double> t_s);

namespace kernels {
/// Unnormalized |sum|^2; each time sample is an independent fixed-order sum.
void atom_sum_serial(std::span<const double> detuning, std::span<const cplx> coeff,
                     std::span<const double> t_s, std::span<double> out);
void atom_sum_omp(std::span<const double> detuning, std::span<const cplx> coeff,
                  std::span<const double> t_s, std::span<double> out);
}  // namespace kernels

/// Stratified draw of `n` atoms with density proportional to OD(nu) |a(nu)|:
/// atom j sits at the (j + 1/2)/n quantile and carries weight 1 / |a|, so the
/// oracle sum estimates int OD(nu) a(nu) exp(i 2 pi nu t) dnu.
std::vector<Atom> draw_atoms(const spectral::OpticalDepthProfile& profile, const InputPulse& pulse,
                             std::size_t n);

struct OracleReport {
    std::size_t n_atoms = 0;
    double correlation = 0.0;       ///< cosine similarity of the two envelopes
    int max_peak_offset_steps = 0;  ///< worst echo-peak disagreement
    std::size_t peaks_compared = 0;
    double dt_s = 0.0;
    bool echoes_present = false;
    bool passed = false;
    std::vector<double> fft_peak_times_s;
    std::vector<double> oracle_peak_times_s;
};

/// Compares the emitted envelope of the FFT propagator with the atom sum in
/// the linear regime: OD is scaled to a peak of `linear_peak_od`, the emitted
/// field is E_in (1 - h), and both envelopes are compared for
/// tau/2 <= t < (n_echoes + 1/2) tau. Echo windows whose peak is at least 5%
/// of the largest are checked for peak time. When neither envelope rises
/// above 1e-3 of its free-decay peak after tau/2, the comparison passes
/// vacuously. Requires n_atoms >= 16.
OracleReport compare_with_oracle(const spectral::OpticalDepthProfile& profile,
                                 const InputPulse& pulse, std::size_t n_atoms, double tau_s,
                                 int n_echoes = 4, double linear_peak_od = 1e-3);

}  // namespace afc::echo
