#include "afc/echo/beat.hpp"

#include <cmath>
#include <numbers>

#include "afc/common/error.hpp"

namespace afc::echo {

void BeatModel::validate() const {
    if (!(tooth_fwhm_hz > 0.0) || !std::isfinite(tooth_fwhm_hz))
        throw ConfigError("beat model tooth width must be > 0");
    std::complex<double> s = 0.0;
    for (const auto& a : amplitudes) s += a;
    if (std::norm(s) == 0.0) throw ConfigError("beat model amplitudes sum to zero");
}

double BeatModel::decay_time_s() const noexcept { return 1.0 / (std::numbers::pi * tooth_fwhm_hz); }

namespace {

// |S(t)|^2 and its time derivative, S = sum_k A_k exp(i 2 pi delta_k t).
std::pair<double, double> power_and_slope(const BeatModel& m, double t) {
    std::complex<double> s = 0.0;
    std::complex<double> ds = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double w = 2.0 * std::numbers::pi * m.detunings_hz[k];
        const auto term = m.amplitudes[k] * std::polar(1.0, w * t);
        s += term;
        ds += std::complex<double>(0.0, w) * term;
    }
    return {std::norm(s), 2.0 * (std::conj(s) * ds).real()};
}

double norm0(const BeatModel& m) {
    std::complex<double> s = 0.0;
    for (const auto& a : m.amplitudes) s += a;
    return std::norm(s);
}

// Sign of d/dt envelope, up to the positive factor exp(-t/T).
double slope(const BeatModel& m, double t) {
    const auto [p, dp] = power_and_slope(m, t);
    return dp - p / m.decay_time_s();
}

}  // namespace

double BeatModel::at(double t_s) const noexcept {
    return power_and_slope(*this, t_s).first * std::exp(-t_s / decay_time_s()) / norm0(*this);
}

std::vector<double> beat_envelope_model(const BeatModel& model, std::span<const double> t_s) {
    model.validate();
    std::vector<double> out(t_s.size());
    for (std::size_t i = 0; i < t_s.size(); ++i) out[i] = model.at(t_s[i]);
    return out;
}

std::vector<double> beat_local_maxima(const BeatModel& model, double t_lo_s, double t_hi_s) {
    model.validate();
    std::vector<double> maxima;
    const double step = 0.1e-9;
    double a = t_lo_s;
    double sa = slope(model, a);
    while (a < t_hi_s) {
        const double b = std::min(a + step, t_hi_s);
        const double sb = slope(model, b);
        if (sa > 0.0 && sb <= 0.0) {
            double lo = a, hi = b;
            for (int it = 0; it < 80 && hi - lo > 1e-16; ++it) {
                const double mid = 0.5 * (lo + hi);
                (slope(model, mid) > 0.0 ? lo : hi) = mid;
            }
            const double t = 0.5 * (lo + hi);
            if (t > t_lo_s && t < t_hi_s) maxima.push_back(t);
        }
        a = b;
        sa = sb;
    }
    return maxima;
}

}  // namespace afc::echo
