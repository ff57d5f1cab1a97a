#include "afc/common/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace afc::parallel {

namespace {

int env_threads() noexcept {
    if (const char* v = std::getenv("AFC_SIM_THREADS")) {
        try {
            return std::stoi(v);
        } catch (...) {
            return -1;
        }
    }
    return -1;
}

}  // namespace

bool enabled() noexcept {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() noexcept {
    const int cap = env_threads();
#ifdef _OPENMP
    const int omp = omp_get_max_threads();
#else
    const int omp = 1;
#endif
    if (cap > 0) return cap < omp ? cap : omp;
    return omp;
}

int env_cap() noexcept {
    const int cap = env_threads();
    return cap > 0 ? cap : 0;
}

void set_threads(int n) noexcept {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

}  // namespace afc::parallel
