#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wpremium {

// Grid sweeps (verifier checks, premium curves) are embarrassingly parallel
// over points.  Every kernel writes per-point results into a preallocated
// slot and reductions happen afterwards in index order, so Serial and
// Parallel produce bit-identical output; Serial is kept as the reference
// implementation for tests and benchmarks.
enum class ExecPolicy { Serial, Parallel };

inline int max_threads(ExecPolicy policy) {
#ifdef _OPENMP
    return policy == ExecPolicy::Parallel ? omp_get_max_threads() : 1;
#else
    (void)policy;
    return 1;
#endif
}

template <typename Fn>
void parallel_for(std::ptrdiff_t n, ExecPolicy policy, Fn&& fn) {
    if (policy == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
        return;
#endif
    }
    for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
}

}  // namespace wpremium
