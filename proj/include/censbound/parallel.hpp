#pragma once

#include <cstddef>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace censbound {

/// Resolves a worker-count flag: values >= 1 are taken literally, anything
/// else falls back to the CENSBOUND_WORKERS environment variable and then to
/// the OpenMP default. Worker count never changes results: every parallel
/// loop writes to disjoint, index-addressed slots and all reductions are
/// ordered serial folds.
inline int resolve_workers(int workers) {
  if (workers >= 1) return workers;
  if (const char* env = std::getenv("CENSBOUND_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) return parsed;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Serial reference loop. Kept alongside the OpenMP kernel so tests and the
/// benchmark can compare the two paths directly.
template <typename Body>
void serial_for_index(std::size_t count, Body&& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

/// OpenMP-parallel loop over [0, count). workers <= 1 runs the serial
/// reference path.
template <typename Body>
void parallel_for_index(std::size_t count, int workers, Body&& body) {
  const int resolved = resolve_workers(workers);
  if (resolved <= 1) {
    serial_for_index(count, body);
    return;
  }
#ifdef _OPENMP
  const long long limit = static_cast<long long>(count);
#pragma omp parallel for schedule(static) num_threads(resolved)
  for (long long i = 0; i < limit; ++i) {
    body(static_cast<std::size_t>(i));
  }
#else
  serial_for_index(count, body);
#endif
}

}  // namespace censbound
