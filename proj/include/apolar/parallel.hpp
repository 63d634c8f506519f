#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace apolar {

/// Worker count for a request of `requested` threads; 0 means the OpenMP default.
inline int resolve_threads(int requested) {
#ifdef _OPENMP
  if (requested <= 0) return omp_get_max_threads();
  return requested;
#else
  (void)requested;
  return 1;
#endif
}

}  // namespace apolar
