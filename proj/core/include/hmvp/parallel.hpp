#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hmvp::parallel {

/// Worker cap: HARMONIC_MVP_THREADS when set to a positive integer, else the
/// hardware concurrency.  set_max_threads overrides both.
std::size_t max_threads();
void set_max_threads(std::size_t n);

/// Calls fn(i) for i in [0, n).  Indices are split into contiguous chunks,
/// one per worker; callers write results into per-index slots so reductions
/// stay in index order.  The exception from the lowest failing chunk is
/// rethrown.
template <class Fn>
void for_each_index(std::size_t n, Fn&& fn, std::size_t min_chunk = 32) {
  const std::size_t workers =
      std::min(max_threads(), std::max<std::size_t>(1, n / min_chunk));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        try {
          for (std::size_t i = lo; i < hi; ++i) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace hmvp::parallel
