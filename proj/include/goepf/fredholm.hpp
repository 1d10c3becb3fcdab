#pragma once

#include <functional>

#include "goepf/kernel.hpp"
#include "goepf/quadrature.hpp"

namespace goepf {

// phi_{s,t} and its s-derivatives:
//   k = 0: 1/sqrt(1 + 4 s e^{t^{1/3} x}) - 1
//   k >= 1: (-2)^k (2k-1)!! e^{k t^{1/3} x} (1 + 4 s e^{t^{1/3} x})^{-(2k+1)/2}
double phi(int k, double s, double t, double x);

struct FredholmContext {
  CompositeGrid grid;
  int L_max = 3;
  KernelTable table;
  std::vector<double> sgn_qw;  // kink-corrected quadrature of sgn(x_i - y)

  static FredholmContext make(double lo = -12.0, double hi = 12.0, int m = 80,
                              int L_max = 3);
};

// Truncated series 1 + sum_{L<=L_max} (1/L!) sum_tuples rho_L prod w f.
// The quadrature of the K22 jump is panel-corrected, consistently with the
// determinant route.
double fredholm_series(const std::function<double(double)>& f,
                       const FredholmContext& ctx);
// Identical arithmetic without threaded loops.
double fredholm_series_serial(const std::function<double(double)>& f,
                              const FredholmContext& ctx);

// Square root of det(I - J K_w) continued from 1 along an adaptive scaling
// path of f; equals the Fredholm Pfaffian of J + K on L^2(window, f dx).
double fredholm_det(const std::function<double(double)>& f,
                    const FredholmContext& ctx);

// E[exp(-s Z e^{t/12})]-type transform: fredholm_det with f = phi_{s,t}.
double laplace_transform(double s, double t, const FredholmContext& ctx);

// Tracy-Widom GOE distribution function: fredholm_det with f = -1 on the
// window restricted to (s0, hi).
double goe_cdf(double s0, const FredholmContext& ctx);

}  // namespace goepf
