#pragma once

namespace afc::parallel {

/// True when the library was built with OpenMP.
bool enabled() noexcept;

/// Thread count for OpenMP kernels: AFC_SIM_THREADS if set and positive,
/// otherwise the OpenMP default.
int max_threads() noexcept;

/// AFC_SIM_THREADS when set and positive, otherwise 0.
int env_cap() noexcept;

/// Sets the OpenMP team size for kernels launched from the calling thread.
void set_threads(int n) noexcept;

}  // namespace afc::parallel
