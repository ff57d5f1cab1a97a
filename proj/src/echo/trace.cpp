#include "afc/echo/trace.hpp"

#include <algorithm>
#include <cmath>

#include "afc/common/error.hpp"
#include "afc/common/fft.hpp"
#include "afc/common/numeric.hpp"

namespace afc::echo {

double EchoTrace::energy() const { return pairwise_sum(intensity) * dt_s; }

std::vector<cplx> time_field(std::span<const cplx> spectrum, double spacing_hz) {
    auto e = fft::inverse(spectrum);
    const double scale = static_cast<double>(spectrum.size()) * spacing_hz;
    for (auto& v : e) v *= scale;
    return e;
}

EchoTrace propagate(const InputPulse& pulse, const TransferFunction& transfer) {
    const auto& grid = transfer.grid;
    auto spec = pulse_spectrum(pulse, grid);
    if (spec.size() != transfer.h.size()) throw GuardError("grid", "pulse and transfer grids differ");
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= transfer.h[i];
    const auto field = time_field(spec, grid.spacing());

    const std::size_t n = field.size();
    const double dt = 1.0 / (static_cast<double>(n) * grid.spacing());
    const std::size_t pre = n / 16;
    EchoTrace tr;
    tr.dt_s = dt;
    tr.pulse_fwhm_s = pulse.duration_fwhm_s;
    tr.intensity.resize(n);
    for (std::size_t i = 0; i < n; ++i) tr.intensity[i] = std::norm(field[(i + n - pre) % n]);

    const auto reach = static_cast<std::size_t>(std::ceil(3.0 * pulse.duration_fwhm_s / dt));
    if (reach >= pre) throw GuardError("pulse-grid", "time record too short for the pulse");
    std::size_t peak = pre - reach;
    for (std::size_t i = pre - reach; i <= pre + reach; ++i)
        if (tr.intensity[i] > tr.intensity[peak]) peak = i;
    tr.zero_index = peak;

    const double total = pairwise_sum(tr.intensity);
    if (total > 0.0) {
        const double tail = pairwise_sum(std::span(tr.intensity).last(pre));
        if (tail > 1e-4 * total)
            throw GuardError("wrap", "echo train reaches the end of the time record; refine the grid spacing",
                             ErrorKind::causality);
        const auto early = std::span(tr.intensity).first(pre - reach);
        if (pairwise_sum(early) > 1e-4 * total)
            throw GuardError("causality", "output energy before the input pulse exceeds 1e-4",
                             ErrorKind::causality);
    }
    return tr;
}

EchoMetrics extract_metrics(const EchoTrace& trace, double tau_s, double input_energy,
                            double threshold, int max_echoes) {
    if (!(input_energy > 0.0)) throw GuardError("input-energy", "input energy must be positive");
    if (!(tau_s > trace.pulse_fwhm_s) || tau_s < 4.0 * trace.dt_s)
        throw GuardError("echo-window", "tau does not exceed the pulse duration; windows overlap");
    if (!(threshold >= 0.0)) throw GuardError("echo-window", "threshold must be >= 0");

    const std::size_t n = trace.intensity.size();
    auto index_of = [&](double t) {
        const double p = std::ceil(t / trace.dt_s - 1e-9) + static_cast<double>(trace.zero_index);
        return static_cast<std::size_t>(std::clamp(p, 0.0, static_cast<double>(n)));
    };
    const double t_end = trace.time(n - 1);

    EchoMetrics m;
    m.tau_s = tau_s;
    for (int k = 0; k <= max_echoes; ++k) {
        const double a = (k - 0.5) * tau_s;
        const double b = (k + 0.5) * tau_s;
        if (b > t_end + trace.dt_s) break;
        const std::size_t i0 = index_of(a);
        const std::size_t i1 = index_of(b);
        if (i1 <= i0) break;
        const auto win = std::span(trace.intensity).subspan(i0, i1 - i0);
        const double e = pairwise_sum(win) * trace.dt_s / input_energy;
        const auto it = std::max_element(win.begin(), win.end());
        if (k == 0) {
            m.transmitted_fraction = e;
            m.transmitted_peak = *it;
            continue;
        }
        m.eta_per_echo.push_back(e);
        m.peak_intensity.push_back(*it);
        m.peak_time_s.push_back(trace.time(i0 + static_cast<std::size_t>(it - win.begin())));
        if (*it >= threshold * m.transmitted_peak && *it > 0.0) ++m.n_visible;
    }
    m.eta_total = pairwise_sum(m.eta_per_echo);
    return m;
}

}  // namespace afc::echo
