// Execution policy for the data-parallel kernels.  Every kernel has a
// serial path and an OpenMP path over the same arithmetic; the serial
// path is the reference the parallel one is tested against.
#pragma once

#include <cstddef>
#include <cstdlib>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace thetascope {

enum class Exec { serial, parallel };

// Default policy: parallel when built with OpenMP, unless
// THETA_SCOPE_THREADS=1 asks for the serial path.
inline Exec default_exec() {
#if defined(_OPENMP)
    const char* env = std::getenv("THETA_SCOPE_THREADS");
    if (env && env[0] == '1' && env[1] == '\0') return Exec::serial;
    return Exec::parallel;
#else
    return Exec::serial;
#endif
}

// f(i) for i in [0, n).  Iterations must be independent; results must not
// depend on execution order (all kernels here write disjoint slots).
template <class F>
inline void parallel_for(Exec exec, std::size_t n, F&& f) {
#if defined(_OPENMP)
    if (exec == Exec::parallel) {
        #pragma omp parallel for schedule(dynamic, 16)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            f(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)exec;
#endif
    for (std::size_t i = 0; i < n; ++i) f(i);
}

} // namespace thetascope
