#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

namespace sectorlab {

/// Every kernel has a serial reference path and an OpenMP path. Both write
/// per-item results into index slots and reduce them serially in index
/// order, so the two paths are bit-identical.
enum class Execution { serial, parallel };

/// Thread cap: SECTORLAB_THREADS if set and positive, else the OpenMP default.
int thread_limit();

namespace detail {

/// Evaluates body(i) for i in [0, n) and stores the results in order. The
/// first exception thrown by any iteration is rethrown after the loop.
template <class T, class Body>
std::vector<T> map_indexed(std::size_t n, Execution exec, Body&& body) {
  std::vector<T> out(n);
  if (exec == Execution::parallel) {
    const long count = static_cast<long>(n);
    const int threads = thread_limit();
    std::exception_ptr failure;
    std::mutex guard;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long i = 0; i < count; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = body(static_cast<std::size_t>(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(guard);
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = body(i);
  }
  return out;
}

/// Fixed-order pairwise sum; the result depends only on the input order.
double pairwise_sum(const double* data, std::size_t n);

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

}  // namespace detail
}  // namespace sectorlab
