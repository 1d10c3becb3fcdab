#include "goepf/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "goepf/airy.hpp"
#include "goepf/parallel.hpp"
#include "goepf/quadrature.hpp"

namespace goepf {

double Envelope::operator()(double x) const {
  if (x >= 0.0) return std::exp(-alpha * std::pow(x, 1.5));
  return std::pow(1.0 - x, beta);
}

namespace {

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

void check_window(double x, double y) {
  if (!(std::fabs(x) <= kKernelWindow && std::fabs(y) <= kKernelWindow))
    throw std::domain_error("kernel: argument outside [-28, 28]");
}

// Shared lambda-grid with per-point Ai / Ai' / upper-tail caches.
struct LambdaCache {
  CompositeGrid grid;
  std::vector<double> a, ap, tail;  // values at x + lambda_q

  LambdaCache(double x, double lam_max) {
    const int panels = static_cast<int>(std::ceil(lam_max / 3.0));
    grid = composite_grid(0.0, lam_max, panels * 20, 3.0);
    const std::size_t q = grid.nodes.size();
    a.resize(q);
    ap.resize(q);
    tail.resize(q);
    for (std::size_t i = 0; i < q; ++i) {
      const AiryValue v = airy_unchecked(x + grid.nodes[i]);
      a[i] = v.ai;
      ap[i] = v.ai_prime;
      tail[i] = airy_upper_tail(x + grid.nodes[i]);
    }
  }
};

double lambda_max_for(double x, double y) {
  return std::max(0.0, -std::min(x, y)) + 40.0;
}

double k11_primary(const LambdaCache& cx, const LambdaCache& cy) {
  const std::vector<double>& w = cx.grid.weights;
  double s = 0.0;
  for (std::size_t q = 0; q < w.size(); ++q)
    s += w[q] * (cx.a[q] * cy.ap[q] - cy.a[q] * cx.ap[q]);
  return s;
}

// Integration by parts of the defining display. The boundary term comes out
// as -Ai(x)Ai(y); the diagonal then vanishes identically, matching the
// defining integral.
double k11_alternate(double x, double y, const LambdaCache& cx,
                     const LambdaCache& cy) {
  const std::vector<double>& w = cx.grid.weights;
  double s = 0.0;
  for (std::size_t q = 0; q < w.size(); ++q) s += w[q] * cy.a[q] * cx.ap[q];
  return -airy_unchecked(x).ai * airy_unchecked(y).ai - 2.0 * s;
}

double k12_value(double x, double y, const LambdaCache& cx,
                 const LambdaCache& cy) {
  const std::vector<double>& w = cx.grid.weights;
  double s = 0.0;
  for (std::size_t q = 0; q < w.size(); ++q) s += w[q] * cx.a[q] * cy.a[q];
  return s + 0.5 * airy_unchecked(x).ai * (1.0 - airy_upper_tail(y));
}

double k22_smooth_primary(double x, double y, const LambdaCache& cx,
                          const LambdaCache& cy) {
  const std::vector<double>& w = cx.grid.weights;
  double s = 0.0;
  for (std::size_t q = 0; q < w.size(); ++q)
    s += w[q] * (cy.tail[q] * cx.a[q] - cx.tail[q] * cy.a[q]);
  return 0.25 * s - 0.25 * airy_upper_tail(x) + 0.25 * airy_upper_tail(y);
}

// Fubini reduction of the double-tail term to a single lambda-integral.
double k22_smooth_alternate(double x, double y, const LambdaCache& cx,
                            const LambdaCache& cy) {
  const std::vector<double>& w = cx.grid.weights;
  double s = 0.0;
  for (std::size_t q = 0; q < w.size(); ++q) s += w[q] * cy.tail[q] * cx.a[q];
  const double tx = airy_upper_tail(x), ty = airy_upper_tail(y);
  return 0.5 * s - 0.25 * tx * ty - 0.25 * tx + 0.25 * ty;
}

}  // namespace

double k_entry(KernelEntrySelector sel, double x, double y,
               KernelFormula formula) {
  check_window(x, y);
  if (sel.row_kind == 2 && sel.col_kind == 1)
    return -k_entry({1, 2}, y, x, formula);
  const double lam_max = lambda_max_for(x, y);
  const LambdaCache cx(x, lam_max), cy(y, lam_max);
  if (sel.row_kind == 1 && sel.col_kind == 1)
    return formula == KernelFormula::primary ? k11_primary(cx, cy)
                                             : k11_alternate(x, y, cx, cy);
  if (sel.row_kind == 1 && sel.col_kind == 2) return k12_value(x, y, cx, cy);
  if (sel.row_kind == 2 && sel.col_kind == 2) {
    const double smooth = formula == KernelFormula::primary
                              ? k22_smooth_primary(x, y, cx, cy)
                              : k22_smooth_alternate(x, y, cx, cy);
    return smooth - 0.25 * sgn(x - y);
  }
  throw std::invalid_argument("k_entry: kinds must be 1 or 2");
}

// The closed form needs Ai and the tail at x only, so the full special-
// function window applies rather than the shifted-pair window.
double k12_diag(double x) {
  if (!(std::fabs(x) <= 30.0))
    throw std::domain_error("k12_diag: argument outside [-30, 30]");
  return airy_square_tail(x) +
         0.5 * airy_unchecked(x).ai * (1.0 - airy_upper_tail(x));
}

LogValue k12_diag_log(double x) {
  if (!(x >= 0.0)) throw std::domain_error("k12_diag_log: x must be >= 0");
  const double zeta = 2.0 / 3.0 * std::pow(x, 1.5);
  const double l_sq = std::log(airy_square_tail_scaled(x)) - 2.0 * zeta;
  const double l_tail =
      std::log(0.5 * airy_scaled(x) * (1.0 - airy_upper_tail(x))) - zeta;
  const double hi = std::max(l_sq, l_tail), lo = std::min(l_sq, l_tail);
  return LogValue{1, hi + std::log1p(std::exp(lo - hi))};
}

AntisymMatrix assemble(const EvaluationPoints& pts) {
  const int L = static_cast<int>(pts.points.size());
  if (L < 1) throw std::invalid_argument("assemble: empty point set");
  for (double x : pts.points)
    if (!(std::fabs(x) <= kKernelWindow))
      throw std::domain_error("assemble: point outside [-28, 28]");
  double lam_max = 40.0;
  for (double x : pts.points)
    lam_max = std::max(lam_max, lambda_max_for(x, x));
  std::vector<LambdaCache> caches;
  caches.reserve(L);
  for (double x : pts.points) caches.emplace_back(x, lam_max);

  AntisymMatrix d(2 * L);
  for (int i = 0; i < L; ++i) {
    const double xi = pts.points[i];
    d.set(2 * i, 2 * i + 1, k12_value(xi, xi, caches[i], caches[i]));
    for (int j = i + 1; j < L; ++j) {
      const double xj = pts.points[j];
      d.set(2 * i, 2 * j, k11_primary(caches[i], caches[j]));
      d.set(2 * i, 2 * j + 1, k12_value(xi, xj, caches[i], caches[j]));
      // D(2i, 2j-1) = K21(x_i, x_j) = -K12(x_j, x_i)
      d.set(2 * i + 1, 2 * j, -k12_value(xj, xi, caches[j], caches[i]));
      d.set(2 * i + 1, 2 * j + 1,
            k22_smooth_primary(xi, xj, caches[i], caches[j]) -
                0.25 * sgn(xi - xj));
    }
  }
  return d;
}

double correlation(const EvaluationPoints& pts) { return pfaffian(assemble(pts)); }

namespace {

template <bool Parallel>
KernelTable build_table_impl(const std::vector<double>& nodes) {
  const int m = static_cast<int>(nodes.size());
  if (m < 1) throw std::invalid_argument("kernel table: empty node set");
  double lo = nodes[0];
  for (double x : nodes) {
    if (!(std::fabs(x) <= kKernelWindow))
      throw std::domain_error("kernel table: node outside [-28, 28]");
    lo = std::min(lo, x);
  }
  const double lam_max = lambda_max_for(lo, lo);
  const int panels = static_cast<int>(std::ceil(lam_max / 3.0));
  const CompositeGrid lam = composite_grid(0.0, lam_max, panels * 20, 3.0);
  const int q = static_cast<int>(lam.nodes.size());

  KernelTable t;
  t.x = nodes;
  t.m = m;
  t.k11.assign(static_cast<std::size_t>(m) * m, 0.0);
  t.k12.assign(static_cast<std::size_t>(m) * m, 0.0);
  t.k22s.assign(static_cast<std::size_t>(m) * m, 0.0);

  // Per-point lambda tables.
  std::vector<double> A(static_cast<std::size_t>(m) * q);
  std::vector<double> Ap(static_cast<std::size_t>(m) * q);
  std::vector<double> Tl(static_cast<std::size_t>(m) * q);
  std::vector<double> ai0(m), tail0(m);
  auto fill_point = [&](std::size_t i) {
    for (int k = 0; k < q; ++k) {
      const double arg = nodes[i] + lam.nodes[k];
      const AiryValue v = airy_unchecked(arg);
      A[i * q + k] = v.ai;
      Ap[i * q + k] = v.ai_prime;
      Tl[i * q + k] = airy_upper_tail(arg);
    }
    ai0[i] = airy_unchecked(nodes[i]).ai;
    tail0[i] = airy_upper_tail(nodes[i]);
  };
  auto fill_pair = [&](std::size_t pair) {
    const std::size_t i = pair / m, j = pair % m;
    if (j < i) return;
    const double* a_i = &A[i * q];
    const double* a_j = &A[j * q];
    const double* ap_i = &Ap[i * q];
    const double* ap_j = &Ap[j * q];
    const double* t_i = &Tl[i * q];
    const double* t_j = &Tl[j * q];
    double s11 = 0.0, s12 = 0.0, s21 = 0.0, s22 = 0.0;
    for (int k = 0; k < q; ++k) {
      const double w = lam.weights[k];
      s11 += w * (a_i[k] * ap_j[k] - a_j[k] * ap_i[k]);
      s12 += w * a_i[k] * a_j[k];
      s21 += w * a_j[k] * a_i[k];
      s22 += w * (t_j[k] * a_i[k] - t_i[k] * a_j[k]);
    }
    const std::size_t ij = i * m + j, ji = j * m + i;
    t.k11[ij] = (i == j) ? 0.0 : s11;
    t.k11[ji] = -t.k11[ij];
    t.k12[ij] = s12 + 0.5 * ai0[i] * (1.0 - tail0[j]);
    if (i != j) t.k12[ji] = s21 + 0.5 * ai0[j] * (1.0 - tail0[i]);
    t.k22s[ij] =
        (i == j) ? 0.0 : 0.25 * s22 - 0.25 * tail0[i] + 0.25 * tail0[j];
    t.k22s[ji] = -t.k22s[ij];
  };

  if constexpr (Parallel) {
    parallel_for(m, fill_point);
    parallel_for(static_cast<std::size_t>(m) * m, fill_pair);
  } else {
    for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i)
      fill_point(i);
    for (std::size_t p = 0; p < static_cast<std::size_t>(m) * m; ++p)
      fill_pair(p);
  }
  return t;
}

}  // namespace

KernelTable build_kernel_table(const std::vector<double>& nodes) {
  return build_table_impl<true>(nodes);
}

KernelTable build_kernel_table_serial(const std::vector<double>& nodes) {
  return build_table_impl<false>(nodes);
}

}  // namespace goepf
