#include "goepf/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "goepf/airy.hpp"
#include "goepf/fredholm.hpp"
#include "goepf/kernel.hpp"
#include "goepf/parallel.hpp"
#include "goepf/quadrature.hpp"

namespace goepf {

MomentParams moment_params(double p, double t) {
  if (!(p > 0.0)) throw std::domain_error("moment_params: p must be > 0");
  if (!(t > 0.0)) throw std::domain_error("moment_params: t must be > 0");
  MomentParams mp;
  mp.p = p;
  mp.t = t;
  mp.n = static_cast<int>(std::floor(p)) + 1;
  mp.alpha = p + 1.0 - mp.n;
  return mp;
}

double c_constant(const MomentParams& mp) {
  const auto [g1ma, be] =
      gamma_beta(1.0 - mp.alpha, (2.0 * mp.n - 1.0) / 2.0 + mp.alpha);
  return std::pow(2.0, mp.n) *
         static_cast<double>(double_factorial(mp.n)) *
         std::pow(4.0, mp.alpha - 1.0) / g1ma * be;
}

namespace {

// log K12(x, x): plain closed form below zero, scaled representation above.
double log_k12_diag_any(double x) {
  if (x < 0.0) return std::log(k12_diag(x));
  return k12_diag_log(x).log_mag;
}

// log int s^{-alpha} (1 + gamma s)^{-beta} ds over [0,1] (via s = e^{-tau})
// or [1,inf) (via s = e^{+tau}); lg = log gamma.
double log_s_integral_01(double alpha, double beta, double lg) {
  const double t_max = std::max(0.0, lg) + 60.0 / (1.0 - alpha);
  const LogValue r = integrate_log_domain(
      [&](double tau) {
        return LogValue{1, -(1.0 - alpha) * tau - beta * softplus(lg - tau)};
      },
      0.0, t_max, 16, 3.0);
  return r.log_mag;
}

double log_s_integral_1inf(double alpha, double beta, double lg) {
  const double rate = beta + alpha - 1.0;
  const double t_max = std::max(0.0, -lg) + 60.0 / rate;
  const LogValue r = integrate_log_domain(
      [&](double tau) {
        return LogValue{1, (1.0 - alpha) * tau - beta * softplus(lg + tau)};
      },
      0.0, t_max, 16, 3.0);
  return r.log_mag;
}

struct XRange {
  double lo, hi, panel;
};

// Integration range for int K12(x,x) e^{c t^{1/3} x} dx: truncated at -30 on
// the left (the clipped mass is O(e^{-20}) relative for c t^{1/3} >= 0.6)
// and past the saddle x* = c^2 t^{2/3} on the right.
XRange leading_range(double c_exp, double t) {
  const double t13 = std::cbrt(t);
  const double slope = c_exp * t13;
  const double xstar = slope * slope;
  double hi = std::max(xstar, 1.0);
  const double peak = slope * xstar - 2.0 / 3.0 * std::pow(xstar, 1.5);
  while (slope * hi - 2.0 / 3.0 * std::pow(hi, 1.5) > peak - 50.0) hi += 1.0;
  const double panel = std::min(2.5, 8.0 / (1.0 + slope));
  return {-30.0, hi + 2.0, panel};
}

void check_leading_window(const MomentParams& mp) {
  if (!(mp.t <= 200.0))
    throw std::domain_error("leading_term: t outside window (t <= 200)");
  if (!(mp.p <= 4.0))
    throw std::domain_error("leading_term: p outside window (p <= 4)");
}

LogValue leading_split(const MomentParams& mp) {
  const double t13 = std::cbrt(mp.t);
  const double beta = (2.0 * mp.n + 1.0) / 2.0;
  const XRange r = leading_range(mp.p, mp.t);
  const LogValue i_main = integrate_log_domain(
      [&](double x) {
        return LogValue{1, log_k12_diag_any(x) + mp.p * t13 * x};
      },
      r.lo, r.hi, 20, r.panel);
  const LogValue a_prime = i_main.scaled(c_constant(mp));

  // A'': the [1, inf) part of the inner s-integral, over x in [-30, 25].
  const double coef = std::pow(2.0, mp.n) *
                      static_cast<double>(double_factorial(mp.n)) /
                      gamma_fn(1.0 - mp.alpha);
  const LogValue i_tail = integrate_log_domain(
      [&](double x) {
        const double lg = std::log(4.0) + t13 * x;
        return LogValue{1, log_k12_diag_any(x) + mp.n * t13 * x +
                               log_s_integral_1inf(mp.alpha, beta, lg)};
      },
      -30.0, 25.0, 20, 1.5);
  const LogValue a_dd = i_tail.scaled(coef);

  const LogValue a = a_prime.sub(a_dd);
  if (a.sign <= 0)
    throw std::runtime_error("leading_term: split route lost positivity");
  return a;
}

LogValue leading_direct(const MomentParams& mp) {
  const double t13 = std::cbrt(mp.t);
  const double beta = (2.0 * mp.n + 1.0) / 2.0;
  const double coef = std::pow(2.0, mp.n) *
                      static_cast<double>(double_factorial(mp.n)) /
                      gamma_fn(1.0 - mp.alpha);
  const XRange r = leading_range(mp.p, mp.t);
  const LogValue i_main = integrate_log_domain(
      [&](double x) {
        const double lg = std::log(4.0) + t13 * x;
        return LogValue{1, log_k12_diag_any(x) + mp.n * t13 * x +
                               log_s_integral_01(mp.alpha, beta, lg)};
      },
      r.lo, r.hi, 20, r.panel);
  return i_main.scaled(coef);
}

}  // namespace

LogValue leading_term(const MomentParams& mp, LeadingRoute route) {
  check_leading_window(mp);
  return route == LeadingRoute::split ? leading_split(mp) : leading_direct(mp);
}

double remainder_bound(const MomentParams& mp) {
  return std::pow(mp.n, mp.n) * std::exp(-static_cast<double>(mp.n)) /
         (gamma_fn(1.0 - mp.alpha) * (mp.n + mp.alpha));
}

double Composition::multinomial() const {
  double r = 1.0;
  int used = 0;
  for (int part : parts)
    for (int j = 1; j <= part; ++j) r *= static_cast<double>(++used) / j;
  return r;
}

std::vector<Composition> compositions(int L, int n) {
  if (L < 1 || n < 0) throw std::invalid_argument("compositions: bad (L, n)");
  // count = binom(n + L - 1, L - 1)
  double count = 1.0;
  for (int j = 1; j <= L - 1; ++j)
    count *= static_cast<double>(n + L - j) / j;
  if (count > 1e6)
    throw std::invalid_argument("compositions: enumeration too large");
  std::vector<Composition> out;
  std::vector<int> cur(L, 0);
  std::function<void(int, int)> rec = [&](int slot, int rem) {
    if (slot == L - 1) {
      cur[slot] = rem;
      out.push_back({cur, n});
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      cur[slot] = v;
      rec(slot + 1, rem - v);
    }
  };
  rec(0, n);
  return out;
}

namespace {

struct TensorCacheEntry {
  CompositeGrid grid;
  KernelTable table;
  std::vector<double> w_rho2;  // rho_2 * w_i w_j
  std::vector<double> w_rho3;  // rho_3 * w_i w_j w_k
};

double rho2_from(const KernelTable& T, int i, int j) {
  return T.k12_diag_at(i) * T.k12_diag_at(j) -
         T.k11_at(i, j) * T.k22_at(i, j) - T.k12_at(i, j) * T.k12_at(j, i);
}

double rho3_from(const KernelTable& T, int i, int j, int k) {
  auto pf4 = [](double a01, double a02, double a03, double a12, double a13,
                double a23) { return a01 * a23 - a02 * a13 + a03 * a12; };
  const double a01 = T.k12_diag_at(i), a23 = T.k12_diag_at(j),
               a45 = T.k12_diag_at(k);
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

const TensorCacheEntry& tensor_cache(const HigherConfig& cfg) {
  static std::map<std::tuple<double, double, int>, TensorCacheEntry> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(cfg.lo, cfg.hi, cfg.m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  TensorCacheEntry e;
  e.grid = composite_grid(cfg.lo, cfg.hi, cfg.m, 5.0);
  e.table = build_kernel_table(e.grid.nodes);
  const int m = e.grid.m();
  const std::vector<double>& w = e.grid.weights;
  e.w_rho2.assign(static_cast<std::size_t>(m) * m, 0.0);
  parallel_for(static_cast<std::size_t>(m) * m, [&](std::size_t p) {
    const int i = static_cast<int>(p / m), j = static_cast<int>(p % m);
    e.w_rho2[p] = rho2_from(e.table, i, j) * w[i] * w[j];
  });
  e.w_rho3.assign(static_cast<std::size_t>(m) * m * m, 0.0);
  parallel_for(static_cast<std::size_t>(m) * m * m, [&](std::size_t p) {
    const int i = static_cast<int>(p / (static_cast<std::size_t>(m) * m));
    const int j = static_cast<int>((p / m) % m);
    const int k = static_cast<int>(p % m);
    e.w_rho3[p] = rho3_from(e.table, i, j, k) * w[i] * w[j] * w[k];
  });
  return cache.emplace(key, std::move(e)).first->second;
}

// G_{m_vec}(s) = sum over tuples of rho_L prod w_i phi^{(m_i)}(x_i).
double contract(const TensorCacheEntry& e, const std::vector<int>& mvec,
                double s, double t) {
  const int m = e.grid.m();
  const int L = static_cast<int>(mvec.size());
  std::vector<std::vector<double>> ph(L, std::vector<double>(m));
  for (int a = 0; a < L; ++a)
    for (int i = 0; i < m; ++i)
      ph[a][i] = phi(mvec[a], s, t, e.grid.nodes[i]);
  if (L == 2) {
    double g = 0.0;
    for (int i = 0; i < m; ++i) {
      double row = 0.0;
      const double* w2 = &e.w_rho2[static_cast<std::size_t>(i) * m];
      for (int j = 0; j < m; ++j) row += w2[j] * ph[1][j];
      g += ph[0][i] * row;
    }
    return g;
  }
  // L == 3
  double g = 0.0;
  for (int i = 0; i < m; ++i) {
    double gi = 0.0;
    for (int j = 0; j < m; ++j) {
      const double* w3 =
          &e.w_rho3[(static_cast<std::size_t>(i) * m + j) * m];
      double row = 0.0;
      for (int k = 0; k < m; ++k) row += w3[k] * ph[2][k];
      gi += ph[1][j] * row;
    }
    g += ph[0][i] * gi;
  }
  return g;
}

}  // namespace

LogValue higher_term(const MomentParams& mp, int L, const HigherConfig& cfg) {
  if (L != 2 && L != 3)
    throw std::invalid_argument("higher_term: L must be 2 or 3");
  if (!(mp.t <= 30.0))
    throw std::domain_error("higher_term: t outside window (t <= 30)");
  const TensorCacheEntry& e = tensor_cache(cfg);

  // tau-integral of e^{-(1-alpha) tau} G(e^{-tau}); the x-window clips the
  // integrand's growth beyond sigma ~ hi / t^{2/3}, after which it decays.
  const double sigma_max = cfg.hi / std::pow(mp.t, 2.0 / 3.0);
  const double tau_max = mp.t * sigma_max + 60.0 / (1.0 - mp.alpha);
  const int panels =
      static_cast<int>(std::ceil(tau_max / cfg.tau_panel));
  const CompositeGrid tau =
      composite_grid(0.0, tau_max, panels * cfg.tau_q, cfg.tau_panel);
  const int n_tau = tau.m();

  std::map<std::vector<int>, double> integral_by_multiset;
  double total = 0.0;
  for (const Composition& comp : compositions(L, mp.n)) {
    std::vector<int> key = comp.parts;
    std::sort(key.begin(), key.end());
    auto it = integral_by_multiset.find(key);
    if (it == integral_by_multiset.end()) {
      std::vector<double> g(n_tau);
      parallel_for(n_tau, [&](std::size_t q) {
        g[q] = contract(e, key, std::exp(-tau.nodes[q]), mp.t);
      });
      double integral = 0.0;
      for (int q = 0; q < n_tau; ++q)
        integral +=
            tau.weights[q] * std::exp(-(1.0 - mp.alpha) * tau.nodes[q]) * g[q];
      it = integral_by_multiset.emplace(std::move(key), integral).first;
    }
    total += comp.multinomial() * it->second;
  }
  double fact = 1.0;
  for (int j = 2; j <= L; ++j) fact *= j;
  const double pref =
      (mp.n % 2 == 0 ? 1.0 : -1.0) / (gamma_fn(1.0 - mp.alpha) * fact);
  return LogValue::from_double(pref * total);
}

MomentBreakdown fractional_moment(const MomentParams& mp, int L_max,
                                  const HigherConfig& cfg) {
  if (L_max < 1 || L_max > 3)
    throw std::invalid_argument("fractional_moment: L_max must be in [1, 3]");
  MomentBreakdown b;
  b.leading = leading_term(mp, LeadingRoute::split);
  b.total = b.leading;
  for (int L = 2; L <= L_max; ++L) {
    b.higher.push_back(higher_term(mp, L, cfg));
    b.total = b.total.add(b.higher.back());
  }
  b.remainder = remainder_bound(mp);
  return b;
}

double moment_from_laplace(const std::function<double(int, double)>& dL,
                           const MomentParams& mp, double s_max) {
  const int n = mp.n;
  const double alpha = mp.alpha;
  const double i1 = integrate_power_singularity(
      [&](double s) { return dL(n, s); }, alpha, 32);
  const double r_lo =
      std::isinf(s_max) ? 0.0 : 1.0 / std::sqrt(s_max);
  const double i2 =
      2.0 * integrate(
                [&](double r) {
                  const double v = dL(n, 1.0 / (r * r));
                  return v == 0.0 ? 0.0 : std::pow(r, 2.0 * alpha - 3.0) * v;
                },
                r_lo, 1.0, 32);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign / gamma_fn(1.0 - alpha) * (i1 + i2);
}

}  // namespace goepf
