#pragma once

#include <functional>
#include <vector>

#include "goepf/log_value.hpp"

namespace goepf {

// Nodes and positive weights on an open window (lo, hi).
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double lo = -1.0;
  double hi = 1.0;
  int m = 0;
};

// Panel-aware grid: q Gauss-Legendre nodes per panel, panel edges kept so
// that kink-aware quadrature (sgn_weight_matrix) can locate a node's panel.
struct CompositeGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> edges;  // n_panels + 1 entries
  int q = 0;                  // nodes per panel
  double lo = 0.0, hi = 0.0;

  int m() const { return static_cast<int>(nodes.size()); }
  int panels() const { return static_cast<int>(edges.size()) - 1; }
  int panel_of(int node_index) const { return node_index / q; }
};

// Classical rule on (-1, 1); Newton iteration on Legendre polynomials.
// Results are cached; 1 <= m <= 512.
const QuadratureGrid& gauss_legendre(int m);

QuadratureGrid map_to_window(const QuadratureGrid& base, double lo, double hi);

// Composite grid with ceil(m_target / panels) nodes per panel and panel
// width <= max_width. Total node count is rounded up to a panel multiple.
CompositeGrid composite_grid(double lo, double hi, int m_target,
                             double max_width = 5.0);

// Mapped Gauss-Legendre estimate; composite panels (width <= 5) when
// hi - lo > 10. Throws on non-finite integrand values.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 int m);

// Truncates at lo + 40 * decay_scale and integrates.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               double lo, double decay_scale, int m);

// Log-sum-exp accumulation of w_i * f(x_i) with signs, fixed left-to-right
// node order. Panels of width <= max_width.
LogValue integrate_log_domain(const std::function<LogValue(double)>& log_f,
                              double lo, double hi, int m,
                              double max_width = 5.0);

// int_0^1 s^{-alpha} g(s) ds via s = u^{1/(1-alpha)}, alpha in [0, 1).
double integrate_power_singularity(const std::function<double(double)>& g,
                                   double alpha, int m);

// Quadrature weights for y |-> sgn(x_i - y) against the grid's panel-wise
// polynomial interpolant. Rows whose kink falls outside a panel reduce to
// sgn(x_i - x_j) w_j; the row's own panel is integrated exactly for the
// interpolant, which restores spectral convergence for kernels with a
// diagonal jump. Row-major m x m.
std::vector<double> sgn_weight_matrix(const CompositeGrid& g);

}  // namespace goepf
