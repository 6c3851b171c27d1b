#pragma once

#include <cstdint>

#ifdef PDOLAB_HAVE_OPENMP
#include <omp.h>
#endif

// OpenMP work distribution for the data-parallel kernels (oracle grids,
// trial batches, convolution slabs).  Every call site writes to disjoint
// slots and reduces sequentially afterwards, so parallel and serial runs
// produce bit-identical results; the serial path is kept as the reference
// implementation for tests and the benchmark target.

namespace pdolab {

inline int max_threads() {
#ifdef PDOLAB_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class F>
void parallel_for(std::int64_t n, F&& body, bool serial = false) {
#ifdef PDOLAB_HAVE_OPENMP
  if (!serial && n > 1) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#else
  (void)serial;
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace pdolab
