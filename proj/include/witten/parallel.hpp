#pragma once

#include <atomic>
#include <cstdint>
#include <omp.h>

// OpenMP helpers. Every parallel loop in this library distributes whole
// output elements (or whole FFT lines) across threads, so results are
// bit-identical for any thread count: no reductions, no shared accumulators.

namespace witten {

namespace detail {
inline std::atomic<int>& thread_cap() {
  static std::atomic<int> cap{0};
  return cap;
}
}  // namespace detail

// Global cap on worker threads (0 = OpenMP default). The CLI sets this from
// the WITTEN_SAMPLER_WORKERS environment variable.
inline int  max_threads() { return detail::thread_cap().load(); }
inline void set_max_threads(int n) { detail::thread_cap().store(n); }

inline int effective_threads() {
  const int cap = max_threads();
  return cap > 0 ? cap : omp_get_max_threads();
}

template <typename F>
void parallel_for(std::int64_t n, F&& body) {
#pragma omp parallel for schedule(static) num_threads(effective_threads())
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

namespace ref {
// Serial reference used by tests and the kernel benchmark.
template <typename F>
void serial_for(std::int64_t n, F&& body) {
  for (std::int64_t i = 0; i < n; ++i) body(i);
}
}  // namespace ref

}  // namespace witten
