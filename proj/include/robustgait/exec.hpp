#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace robustgait {

enum class Exec { Serial, Parallel };

/// Frame-loop driver. The parallel path is OpenMP; kernels derive per-frame
/// RNG streams up front, so scheduling order cannot change the result and the
/// serial path is a drop-in reference for testing.
template <typename Fn>
void for_each_frame(std::size_t count, Exec exec, Fn&& fn) {
#ifdef _OPENMP
    if (exec == Exec::Parallel) {
        const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i) fn(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)exec;
#endif
    for (std::size_t i = 0; i < count; ++i) fn(i);
}

inline int max_workers() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_workers(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

} // namespace robustgait
