#include "afc/common/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace afc::fft {

namespace {

// The FFTW planner is not thread-safe; execution on distinct arrays is.
std::mutex planner_mutex;

std::vector<cplx> transform(std::span<const cplx> x, int sign) {
    const int n = static_cast<int>(x.size());
    std::vector<cplx> out(x.begin(), x.end());
    if (n == 0) return out;
    auto* data = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex);
        plan = fftw_plan_dft_1d(n, data, data, sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

std::size_t good_size(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

std::vector<cplx> forward(std::span<const cplx> x) { return transform(x, FFTW_FORWARD); }

std::vector<cplx> inverse(std::span<const cplx> x) {
    auto out = transform(x, FFTW_BACKWARD);
    const double scale = out.empty() ? 1.0 : 1.0 / static_cast<double>(out.size());
    for (auto& v : out) v *= scale;
    return out;
}

std::vector<cplx> forward_real(std::span<const double> x, std::size_t n) {
    std::vector<double> in(n, 0.0);
    std::copy_n(x.begin(), std::min(n, x.size()), in.begin());
    std::vector<cplx> out(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

std::vector<double> inverse_real(std::span<const cplx> half, std::size_t n) {
    // c2r overwrites its input.
    std::vector<cplx> in(half.begin(), half.end());
    std::vector<double> out(n);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex);
        plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                    out.data(), FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= scale;
    return out;
}

std::vector<double> convolve_real(std::span<const double> a, std::span<const double> b,
                                  std::size_t out_size) {
    if (a.empty() || b.empty()) return std::vector<double>(out_size, 0.0);
    const std::size_t n = good_size(a.size() + b.size() - 1);
    auto fa = forward_real(a, n);
    const auto fb = forward_real(b, n);
    for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
    const auto full = inverse_real(fa, n);
    std::vector<double> out(out_size, 0.0);
    std::copy_n(full.begin(), std::min(out_size, n), out.begin());
    return out;
}

}  // namespace afc::fft
