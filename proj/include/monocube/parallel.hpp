#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

#include <omp.h>

namespace monocube::par {

// MONOCUBE_THREADS overrides the OpenMP default.
inline void init_threads_from_env() {
  if (const char* env = std::getenv("MONOCUBE_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) omp_set_num_threads(t);
  }
}

inline int thread_count() { return omp_get_max_threads(); }

// Data-parallel loop over cheap bodies.  Runs serially below the grain size
// and inside an enclosing parallel region (nested teams are pure overhead).
template <class F>
void parallel_for(std::int64_t n, F&& body) {
  constexpr std::int64_t grain = 4096;
  if (n < grain || omp_in_parallel()) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

// Task-parallel loop over expensive bodies; parallel at any count.
template <class F>
void parallel_for_dynamic(std::int64_t n, F&& body) {
  if (omp_in_parallel()) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

// Deterministic reduction: fixed chunking independent of the thread count and
// of nesting, partials combined in chunk order.  Same result for any
// MONOCUBE_THREADS and from any calling context.
template <class F>
double sum_indexed(std::int64_t n, F&& term) {
  if (n <= 0) return 0.0;
  const std::int64_t nchunks = n < 2048 ? 1 : 256;
  const std::int64_t chunk = (n + nchunks - 1) / nchunks;
  std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
  const bool go_parallel = nchunks > 1 && !omp_in_parallel();
#pragma omp parallel for schedule(static) if (go_parallel)
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::int64_t lo = c * chunk;
    const std::int64_t hi = lo + chunk < n ? lo + chunk : n;
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(c)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace monocube::par
