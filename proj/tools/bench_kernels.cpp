// Timing comparison of the threaded kernels against their serial reference
// implementations.
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "goepf/fredholm.hpp"
#include "goepf/kernel.hpp"
#include "goepf/parallel.hpp"
#include "goepf/quadrature.hpp"

using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  const goepf::CompositeGrid grid = goepf::composite_grid(-12.0, 12.0, 96, 5.0);

  // warm the static special-function tables so both timings see them
  (void)goepf::build_kernel_table_serial({0.0, 1.0});

  auto t0 = Clock::now();
  const goepf::KernelTable ts = goepf::build_kernel_table_serial(grid.nodes);
  const double t_table_serial = seconds_since(t0);
  t0 = Clock::now();
  const goepf::KernelTable tp = goepf::build_kernel_table(grid.nodes);
  const double t_table_par = seconds_since(t0);
  double max_diff = 0.0;
  for (std::size_t i = 0; i < ts.k12.size(); ++i)
    max_diff = std::max(max_diff, std::abs(ts.k12[i] - tp.k12[i]));
  std::printf("kernel table   m=%d      serial %8.3f s   parallel %8.3f s   "
              "speedup %.2fx   max diff %.1e\n",
              grid.m(), t_table_serial, t_table_par,
              t_table_serial / t_table_par, max_diff);

  const goepf::FredholmContext ctx = goepf::FredholmContext::make(-12, 12, 64, 3);
  auto f = [](double x) { return goepf::phi(0, 0.1, 2.0, x); };
  t0 = Clock::now();
  const double vs = goepf::fredholm_series_serial(f, ctx);
  const double t_series_serial = seconds_since(t0);
  t0 = Clock::now();
  const double vp = goepf::fredholm_series(f, ctx);
  const double t_series_par = seconds_since(t0);
  std::printf("series L<=3    m=%d      serial %8.3f s   parallel %8.3f s   "
              "speedup %.2fx   diff %.1e\n",
              ctx.grid.m(), t_series_serial, t_series_par,
              t_series_serial / t_series_par, std::abs(vs - vp));

  const std::size_t n = 50'000'000;
  auto term = [](std::size_t i) {
    const double x = 1e-7 * static_cast<double>(i % 1000);
    return x * x - 0.3 * x;
  };
  t0 = Clock::now();
  const double ss = goepf::serial_sum(n, term);
  const double t_sum_serial = seconds_since(t0);
  t0 = Clock::now();
  const double sp = goepf::blocked_sum(n, term);
  const double t_sum_par = seconds_since(t0);
  std::printf("blocked sum    n=%zu serial %8.3f s   parallel %8.3f s   "
              "speedup %.2fx   rel diff %.1e\n",
              n, t_sum_serial, t_sum_par, t_sum_serial / t_sum_par,
              std::abs(ss - sp) / std::abs(ss));
  return 0;
}
