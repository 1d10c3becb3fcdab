#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace goepf {

// Deterministic blocked reduction: the index range is cut into fixed-size
// blocks, each block is summed serially in index order, and block partials
// are combined in block order. The result does not depend on thread count
// or schedule.
template <class F>
double blocked_sum(std::size_t n, F&& term, std::size_t block = 4096) {
  if (n == 0) return 0.0;
  const std::size_t nb = (n + block - 1) / block;
  std::vector<double> partial(nb, 0.0);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(nb); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * block;
    const std::size_t hi = std::min(n, lo + block);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(b)] = s;
  }
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

// Plain serial sum, kept as the reference implementation for tests and
// benchmarks.
template <class F>
double serial_sum(std::size_t n, F&& term) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += term(i);
  return s;
}

template <class F>
void parallel_for(std::size_t n, F&& body) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    body(static_cast<std::size_t>(i));
}

}  // namespace goepf
