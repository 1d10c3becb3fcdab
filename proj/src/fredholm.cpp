#include "goepf/fredholm.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "goepf/antisym.hpp"
#include "goepf/parallel.hpp"

namespace goepf {

namespace {

double log_double_fact(int k) {
  double s = 0.0;
  for (int j = 1; j <= k; ++j) s += std::log(2.0 * j - 1.0);
  return s;
}

}  // namespace

double phi(int k, double s, double t, double x) {
  if (k < 0) throw std::invalid_argument("phi: negative order");
  if (!(s >= 0.0)) throw std::domain_error("phi: s must be >= 0");
  if (!(t > 0.0)) throw std::domain_error("phi: t must be > 0");
  const double arg = std::cbrt(t) * x;
  if (k == 0) {
    if (s == 0.0) return 0.0;
    const double ly = std::log(4.0 * s) + arg;
    if (ly > 46.0) return std::exp(-0.5 * ly) - 1.0;
    const double y = std::exp(ly);
    const double r = std::sqrt(1.0 + y);
    return -y / (r * (1.0 + r));
  }
  const double lys = s == 0.0 ? -std::numeric_limits<double>::infinity()
                              : std::log(4.0 * s) + arg;
  const double lv = k * std::log(2.0) + log_double_fact(k) + k * arg -
                    0.5 * (2.0 * k + 1.0) * softplus(lys);
  return (k % 2 == 0 ? 1.0 : -1.0) * std::exp(lv);
}

FredholmContext FredholmContext::make(double lo, double hi, int m, int L_max) {
  if (L_max < 1 || L_max > 3)
    throw std::invalid_argument("FredholmContext: L_max must be in [1, 3]");
  FredholmContext ctx;
  ctx.grid = composite_grid(lo, hi, m, 5.0);
  ctx.L_max = L_max;
  ctx.table = build_kernel_table(ctx.grid.nodes);
  ctx.sgn_qw = sgn_weight_matrix(ctx.grid);
  return ctx;
}

namespace {

// Pf of the 4x4 antisymmetric matrix with upper entries a01..a23.
inline double pf4(double a01, double a02, double a03, double a12, double a13,
                  double a23) {
  return a01 * a23 - a02 * a13 + a03 * a12;
}

struct SeriesWork {
  const FredholmContext& ctx;
  std::vector<double> f, wf;
  int m;

  SeriesWork(const std::function<double(double)>& fn,
             const FredholmContext& c)
      : ctx(c), m(c.grid.m()) {
    f.resize(m);
    wf.resize(m);
    for (int i = 0; i < m; ++i) {
      f[i] = fn(ctx.grid.nodes[i]);
      if (!std::isfinite(f[i]))
        throw std::runtime_error("fredholm: non-finite f at a grid node");
      wf[i] = ctx.grid.weights[i] * f[i];
    }
  }

  double d(int i) const { return ctx.table.k12_diag_at(i); }

  // rho_2 with the pointwise sgn value.
  double rho2(int i, int j) const {
    const KernelTable& T = ctx.table;
    return d(i) * d(j) - T.k11_at(i, j) * T.k22_at(i, j) -
           T.k12_at(i, j) * T.k12_at(j, i);
  }

  // rho_3 (pointwise sgn) via Pfaffian expansion along the first row.
  double rho3(int i, int j, int k) const {
    const KernelTable& T = ctx.table;
    const double a01 = d(i), a23 = d(j), a45 = d(k);
    const double a02 = T.k11_at(i, j), a03 = T.k12_at(i, j);
    const double a04 = T.k11_at(i, k), a05 = T.k12_at(i, k);
    const double a12 = T.k21_at(i, j), a13 = T.k22_at(i, j);
    const double a14 = T.k21_at(i, k), a15 = T.k22_at(i, k);
    const double a24 = T.k11_at(j, k), a25 = T.k12_at(j, k);
    const double a34 = T.k21_at(j, k), a35 = T.k22_at(j, k);
    return a01 * pf4(a23, a24, a25, a34, a35, a45) -
           a02 * pf4(a13, a14, a15, a34, a35, a45) +
           a03 * pf4(a12, a14, a15, a24, a25, a45) -
           a04 * pf4(a12, a13, a15, a23, a25, a35) +
           a05 * pf4(a12, a13, a14, a23, a24, a34);
  }

  // Cofactors of the three K22 slots in rho_3 (0-based rows: K22(x_a, x_b)
  // sits at (2a+1, 2b+1); cofactor = (-1)^{r+s+1} Pf of the complement).
  double cof_k22_ij(int i, int j, int k) const {  // entry (1,3)
    const KernelTable& T = ctx.table;
    // complement rows {0,2,4,5}
    return -pf4(T.k11_at(i, j), T.k11_at(i, k), T.k12_at(i, k),
                T.k11_at(j, k), T.k12_at(j, k), d(k));
  }
  double cof_k22_ik(int i, int j, int k) const {  // entry (1,5)
    const KernelTable& T = ctx.table;
    // complement rows {0,2,3,4}
    return -pf4(T.k11_at(i, j), T.k12_at(i, j), T.k11_at(i, k), d(j),
                T.k11_at(j, k), T.k21_at(j, k));
  }
  double cof_k22_jk(int i, int j, int k) const {  // entry (3,5)
    const KernelTable& T = ctx.table;
    // complement rows {0,1,2,4}
    return -pf4(d(i), T.k11_at(i, j), T.k11_at(i, k), T.k21_at(i, j),
                T.k21_at(i, k), T.k11_at(j, k));
  }
};

template <class Sum>
double series_value(const std::function<double(double)>& fn,
                    const FredholmContext& ctx, Sum&& sum) {
  const SeriesWork w(fn, ctx);
  const int m = w.m;
  const int q = ctx.grid.q;
  const KernelTable& T = ctx.table;
  const std::vector<double>& E = ctx.sgn_qw;
  auto dE = [&](int i, int j) {
    const double naive = (ctx.grid.nodes[i] > ctx.grid.nodes[j]
                              ? 1.0
                              : (ctx.grid.nodes[i] < ctx.grid.nodes[j] ? -1.0
                                                                       : 0.0)) *
                         ctx.grid.weights[j];
    return E[static_cast<std::size_t>(i) * m + j] - naive;
  };

  double total = 1.0;
  // L = 1
  total += sum(m, [&](std::size_t i) { return w.d(i) * w.wf[i]; });
  if (ctx.L_max < 2) return total;

  // L = 2, pointwise part
  double t2 = 0.5 * sum(static_cast<std::size_t>(m) * m, [&](std::size_t p) {
                const int i = static_cast<int>(p / m), j = static_cast<int>(p % m);
                return w.rho2(i, j) * w.wf[i] * w.wf[j];
              });
  // jump correction: rho2 contains +K11(x,y) sgn(x-y)/4
  t2 += 0.5 * 0.25 *
        sum(static_cast<std::size_t>(m) * q, [&](std::size_t p) {
          const int i = static_cast<int>(p / q);
          const int jq = static_cast<int>(p % q);
          const int j = ctx.grid.panel_of(i) * q + jq;
          return w.wf[i] * T.k11_at(i, j) * dE(i, j) * w.f[j];
        });
  total += t2;
  if (ctx.L_max < 3) return total;

  // L = 3, pointwise part
  double t3 =
      (1.0 / 6.0) *
      sum(static_cast<std::size_t>(m) * m * m, [&](std::size_t p) {
        const int i = static_cast<int>(p / (static_cast<std::size_t>(m) * m));
        const int j = static_cast<int>((p / m) % m);
        const int k = static_cast<int>(p % m);
        return w.rho3(i, j, k) * w.wf[i] * w.wf[j] * w.wf[k];
      });
  // jump corrections, one per K22 slot; the corrected variable is the
  // second point of the slot, integrated against the kink at the first.
  t3 += (1.0 / 6.0) * (-0.25) *
        sum(static_cast<std::size_t>(m) * q * m, [&](std::size_t p) {
          const int i = static_cast<int>(p / (static_cast<std::size_t>(q) * m));
          const int jq = static_cast<int>((p / m) % q);
          const int k = static_cast<int>(p % m);
          const int j = ctx.grid.panel_of(i) * q + jq;
          return w.cof_k22_ij(i, j, k) * dE(i, j) * w.f[j] * w.wf[i] * w.wf[k];
        });
  t3 += (1.0 / 6.0) * (-0.25) *
        sum(static_cast<std::size_t>(m) * q * m, [&](std::size_t p) {
          const int i = static_cast<int>(p / (static_cast<std::size_t>(q) * m));
          const int kq = static_cast<int>((p / m) % q);
          const int j = static_cast<int>(p % m);
          const int k = ctx.grid.panel_of(i) * q + kq;
          return w.cof_k22_ik(i, j, k) * dE(i, k) * w.f[k] * w.wf[i] * w.wf[j];
        });
  t3 += (1.0 / 6.0) * (-0.25) *
        sum(static_cast<std::size_t>(m) * q * m, [&](std::size_t p) {
          const int j = static_cast<int>(p / (static_cast<std::size_t>(q) * m));
          const int kq = static_cast<int>((p / m) % q);
          const int i = static_cast<int>(p % m);
          const int k = ctx.grid.panel_of(j) * q + kq;
          return w.cof_k22_jk(i, j, k) * dE(j, k) * w.f[k] * w.wf[j] * w.wf[i];
        });
  total += t3;
  return total;
}

}  // namespace

double fredholm_series(const std::function<double(double)>& f,
                       const FredholmContext& ctx) {
  return series_value(f, ctx, [](std::size_t n, auto&& term) {
    return blocked_sum(n, term);
  });
}

double fredholm_series_serial(const std::function<double(double)>& f,
                              const FredholmContext& ctx) {
  return series_value(f, ctx, [](std::size_t n, auto&& term) {
    std::vector<double> partial;  // same blocked order as blocked_sum
    const std::size_t block = 4096;
    const std::size_t nb = (n + block - 1) / block;
    partial.assign(nb, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
      const std::size_t lo = b * block, hi = std::min(n, lo + block);
      double s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) s += term(i);
      partial[b] = s;
    }
    double s = 0.0;
    for (double v : partial) s += v;
    return s;
  });
}

namespace {

// 2m x 2m matrix B = J K W_f; det(I - lambda B) = Pf(...)^2 at scaling
// lambda of f.
std::vector<double> build_b_matrix(const std::vector<double>& f,
                                   const FredholmContext& ctx) {
  const int m = ctx.grid.m();
  const KernelTable& T = ctx.table;
  const std::vector<double>& E = ctx.sgn_qw;
  std::vector<double> B(static_cast<std::size_t>(2 * m) * (2 * m), 0.0);
  auto at = [&](int r, int c) -> double& {
    return B[static_cast<std::size_t>(r) * 2 * m + c];
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double wf = ctx.grid.weights[j] * f[j];
      const double k22w = T.k22s_at(i, j) * wf -
                          0.25 * E[static_cast<std::size_t>(i) * m + j] * f[j];
      // J2 * K block = [[K21, K22], [-K11, -K12]]
      at(2 * i, 2 * j) = T.k21_at(i, j) * wf;
      at(2 * i, 2 * j + 1) = k22w;
      at(2 * i + 1, 2 * j) = -T.k11_at(i, j) * wf;
      at(2 * i + 1, 2 * j + 1) = -T.k12_at(i, j) * wf;
    }
  return B;
}

LogValue det_at_scaling(const std::vector<double>& B, int dim, double lam) {
  std::vector<double> M(static_cast<std::size_t>(dim) * dim, 0.0);
  for (std::size_t p = 0; p < M.size(); ++p) M[p] = -lam * B[p];
  for (int i = 0; i < dim; ++i) M[static_cast<std::size_t>(i) * dim + i] += 1.0;
  return determinant(std::move(M), dim);
}

}  // namespace

double fredholm_det(const std::function<double(double)>& f,
                    const FredholmContext& ctx) {
  const int m = ctx.grid.m();
  std::vector<double> fv(m);
  for (int i = 0; i < m; ++i) {
    fv[i] = f(ctx.grid.nodes[i]);
    if (!std::isfinite(fv[i]))
      throw std::runtime_error("fredholm_det: non-finite f at a grid node");
  }
  const std::vector<double> B = build_b_matrix(fv, ctx);

  std::vector<double> lams = {0.0};
  for (int k = 12; k >= 0; --k) lams.push_back(std::pow(2.0, -k));
  std::map<double, LogValue> dets;
  dets[0.0] = LogValue::one();
  for (int attempt = 0; attempt < 400; ++attempt) {
    std::vector<LogValue> path;
    path.reserve(lams.size());
    for (double lam : lams) {
      auto it = dets.find(lam);
      if (it == dets.end())
        it = dets.emplace(lam, det_at_scaling(B, 2 * m, lam)).first;
      path.push_back(it->second);
    }
    try {
      const std::vector<LogValue> roots = sqrt_continued(path);
      return roots.back().value();
    } catch (const PathRefineError& e) {
      if (lams.size() > 200)
        throw std::runtime_error(
            "fredholm_det: scaling path refinement failed to converge");
      const std::size_t k = e.index;
      lams.insert(lams.begin() + k, 0.5 * (lams[k - 1] + lams[k]));
    }
  }
  throw std::runtime_error("fredholm_det: scaling path did not stabilize");
}

double laplace_transform(double s, double t, const FredholmContext& ctx) {
  if (!(s >= 0.0)) throw std::domain_error("laplace_transform: s must be >= 0");
  if (!(t > 0.0)) throw std::domain_error("laplace_transform: t must be > 0");
  if (s == 0.0) return 1.0;
  return fredholm_det([&](double x) { return phi(0, s, t, x); }, ctx);
}

double goe_cdf(double s0, const FredholmContext& ctx) {
  const double hi = ctx.grid.hi;
  if (!(s0 < hi - 1e-9))
    throw std::domain_error("goe_cdf: s0 must lie below the window top");
  if (!(s0 >= -kKernelWindow))
    throw std::domain_error("goe_cdf: s0 below the kernel window");
  FredholmContext sub = FredholmContext::make(s0, hi, ctx.grid.m(), ctx.L_max);
  return fredholm_det([](double) { return -1.0; }, sub);
}

}  // namespace goepf
