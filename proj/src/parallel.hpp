#pragma once

#include <cstddef>
#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polykin::detail {

/// Runs body(i) for i in [0, n). If bodies throw, the exception from the
/// lowest index is rethrown after the loop, so failures are deterministic.
template <class Body>
void parallel_for(std::size_t n, const Body& body) {
  std::exception_ptr failure;
  std::size_t failed_at = std::numeric_limits<std::size_t>::max();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    try {
      body(i);
    } catch (...) {
#pragma omp critical(polykin_parallel_for)
      {
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

} // namespace polykin::detail
