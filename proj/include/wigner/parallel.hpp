#pragma once

#include <cstddef>
#include <exception>
#include <utility>
#include <vector>

#include <omp.h>

namespace wigner {

// Evaluates fn(k) for k = 0..reps-1 and returns the results in index order.
// With workers > 1 the indices are split in static blocks across OpenMP threads.
// Results are stored by index, so callers folding them in order get bitwise
// identical aggregates for every worker count. If several realizations throw,
// the exception of the lowest index is rethrown.
template <class T, class F>
std::vector<T> map_realizations(std::size_t reps, int workers, F&& fn) {
  std::vector<T> out(reps);
  if (workers <= 1 || reps <= 1) {
    for (std::size_t k = 0; k < reps; ++k) out[k] = fn(k);
    return out;
  }
  std::vector<std::exception_ptr> errors(reps);
  const long long n = static_cast<long long>(reps);
#pragma omp parallel for schedule(static) num_threads(workers)
  for (long long k = 0; k < n; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = fn(static_cast<std::size_t>(k));
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// Serial reference for map_realizations, kept for tests and the benchmark.
template <class T, class F>
std::vector<T> map_realizations_serial(std::size_t reps, F&& fn) {
  std::vector<T> out(reps);
  for (std::size_t k = 0; k < reps; ++k) out[k] = fn(k);
  return out;
}

}  // namespace wigner
