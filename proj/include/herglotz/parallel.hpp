#pragma once

#include <cstddef>
#include <exception>

namespace herglotz {

/// Runs fn(i) for i in [0, n) across OpenMP threads. The first exception
/// thrown by any iteration is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::ptrdiff_t n, Fn&& fn) {
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
#pragma omp critical(herglotz_parallel_for)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace herglotz
