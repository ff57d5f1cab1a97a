#pragma once

#include <complex>
#include <vector>

#include "afc/spectral/line.hpp"

namespace afc::echo {

/// Complex amplitude transmission on a frequency grid.
struct TransferFunction {
    spectral::FrequencyGrid grid;
    std::vector<std::complex<double>> h;
};

/// Minimum-phase transmission with |h| = exp(-OD/2). The phase is obtained
/// from the folded real cepstrum of log|h| on a 2x zero-padded axis, which
/// makes the impulse response causal.
///
/// Throws GuardError("edge-od", causality) when OD at either grid edge
/// exceeds 1e-3 of its maximum.
TransferFunction transfer_from_od(const spectral::OpticalDepthProfile& profile);

}  // namespace afc::echo
