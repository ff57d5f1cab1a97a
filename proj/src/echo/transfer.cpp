#include "afc/echo/transfer.hpp"

#include <cmath>

#include "afc/common/error.hpp"
#include "afc/common/fft.hpp"

namespace afc::echo {

TransferFunction transfer_from_od(const spectral::OpticalDepthProfile& profile) {
    profile.validate();
    const auto& od = profile.od;
    const std::size_t n = od.size();
    const double peak = profile.max();
    if (peak > 0.0 && std::max(od.front(), od.back()) > 1e-3 * peak)
        throw GuardError("edge-od", "OD at the grid edge exceeds 1e-3 of its maximum; widen the grid",
                         ErrorKind::causality);

    TransferFunction tf{profile.grid, std::vector<std::complex<double>>(n, 1.0)};
    if (peak == 0.0) return tf;

    std::size_t m = 1;
    while (m < 2 * n) m <<= 1;
    std::vector<fft::cplx> logmag(m);
    for (std::size_t i = 0; i < n; ++i) logmag[i] = -0.5 * od[i];

    auto cep = fft::inverse(logmag);
    // log|h| is real, so cep[-k] = conj(cep[k]); doubling k in (0, m/2) and
    // dropping k > m/2 keeps the real part and makes log h causal.
    cep[0] = cep[0].real();
    cep[m / 2] = cep[m / 2].real();
    for (std::size_t k = 1; k < m / 2; ++k) cep[k] *= 2.0;
    for (std::size_t k = m / 2 + 1; k < m; ++k) cep[k] = 0.0;
    const auto logh = fft::forward(cep);
    for (std::size_t i = 0; i < n; ++i) {
        // The real part is log|h| up to round-off; use the exact value.
        tf.h[i] = std::exp(std::complex<double>(-0.5 * od[i], logh[i].imag()));
    }
    return tf;
}

}  // namespace afc::echo
