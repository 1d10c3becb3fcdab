#include "goepf/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace goepf {

namespace {

QuadratureGrid make_gauss_legendre(int m) {
  QuadratureGrid g;
  g.lo = -1.0;
  g.hi = 1.0;
  g.m = m;
  g.nodes.assign(m, 0.0);
  g.weights.assign(m, 0.0);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess for the i-th root of P_m.
    double z = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= m; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = m * (z * p1 - p2) / (z * z - 1.0);
      const double dz = -p1 / pp;
      z += dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    g.nodes[i] = -z;
    g.nodes[m - 1 - i] = z;
    g.weights[i] = g.weights[m - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return g;
}

}  // namespace

const QuadratureGrid& gauss_legendre(int m) {
  if (m < 1 || m > 512)
    throw std::invalid_argument("gauss_legendre: m must be in [1, 512]");
  static std::map<int, QuadratureGrid> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, make_gauss_legendre(m)).first;
  return it->second;
}

QuadratureGrid map_to_window(const QuadratureGrid& base, double lo, double hi) {
  QuadratureGrid g;
  g.lo = lo;
  g.hi = hi;
  g.m = base.m;
  const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
  g.nodes.resize(base.m);
  g.weights.resize(base.m);
  for (int i = 0; i < base.m; ++i) {
    g.nodes[i] = mid + hw * base.nodes[i];
    g.weights[i] = hw * base.weights[i];
  }
  return g;
}

CompositeGrid composite_grid(double lo, double hi, int m_target,
                             double max_width) {
  if (!(hi > lo)) throw std::invalid_argument("composite_grid: hi <= lo");
  if (m_target < 1) throw std::invalid_argument("composite_grid: m < 1");
  const int panels =
      std::max(1, static_cast<int>(std::ceil((hi - lo) / max_width)));
  const int q = std::min(512, (m_target + panels - 1) / panels);
  const QuadratureGrid& base = gauss_legendre(q);
  CompositeGrid g;
  g.lo = lo;
  g.hi = hi;
  g.q = q;
  g.edges.resize(panels + 1);
  for (int p = 0; p <= panels; ++p)
    g.edges[p] = lo + (hi - lo) * static_cast<double>(p) / panels;
  g.nodes.reserve(panels * q);
  g.weights.reserve(panels * q);
  for (int p = 0; p < panels; ++p) {
    const double a = g.edges[p], b = g.edges[p + 1];
    const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
    for (int k = 0; k < q; ++k) {
      g.nodes.push_back(mid + hw * base.nodes[k]);
      g.weights.push_back(hw * base.weights[k]);
    }
  }
  return g;
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 int m) {
  if (!(hi > lo)) throw std::invalid_argument("integrate: hi <= lo");
  const double width = hi - lo;
  const int panels =
      width > 10.0 ? static_cast<int>(std::ceil(width / 5.0)) : 1;
  const QuadratureGrid& base = gauss_legendre(m);
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + width * p / panels;
    const double b = lo + width * (p + 1) / panels;
    const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
    for (int k = 0; k < m; ++k) {
      const double x = mid + hw * base.nodes[k];
      const double v = f(x);
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "integrate: non-finite integrand at x = " << x;
        throw std::runtime_error(os.str());
      }
      total += hw * base.weights[k] * v;
    }
  }
  return total;
}

double integrate_semi_infinite(const std::function<double(double)>& f,
                               double lo, double decay_scale, int m) {
  if (!(decay_scale > 0.0))
    throw std::invalid_argument("integrate_semi_infinite: decay_scale <= 0");
  return integrate(f, lo, lo + 40.0 * decay_scale, m);
}

LogValue integrate_log_domain(const std::function<LogValue(double)>& log_f,
                              double lo, double hi, int m, double max_width) {
  if (!(hi > lo))
    throw std::invalid_argument("integrate_log_domain: hi <= lo");
  // m nodes per panel, matching integrate().
  const int panels =
      std::max(1, static_cast<int>(std::ceil((hi - lo) / max_width)));
  const CompositeGrid g = composite_grid(lo, hi, panels * m, max_width);
  const std::size_t n = g.nodes.size();
  std::vector<int> signs(n, 0);
  std::vector<double> logs(n, -std::numeric_limits<double>::infinity());
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const LogValue v = log_f(g.nodes[i]);
    if (v.sign == 0) continue;
    signs[i] = v.sign;
    logs[i] = v.log_mag + std::log(g.weights[i]);
    peak = std::max(peak, logs[i]);
  }
  if (!std::isfinite(peak)) return LogValue::zero();
  double acc = 0.0;  // fixed left-to-right order
  for (std::size_t i = 0; i < n; ++i)
    if (signs[i] != 0) acc += signs[i] * std::exp(logs[i] - peak);
  if (acc == 0.0) return LogValue::zero();
  return LogValue{acc > 0 ? 1 : -1, peak + std::log(std::fabs(acc))};
}

double integrate_power_singularity(const std::function<double(double)>& g,
                                   double alpha, int m) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument(
        "integrate_power_singularity: alpha outside [0, 1)");
  const double inv = 1.0 / (1.0 - alpha);
  return inv *
         integrate([&](double u) { return g(std::pow(u, inv)); }, 0.0, 1.0, m);
}

namespace {

// P_0..P_nmax at u.
std::vector<double> legendre_values(int nmax, double u) {
  std::vector<double> P(nmax + 1);
  P[0] = 1.0;
  if (nmax >= 1) P[1] = u;
  for (int n = 1; n < nmax; ++n)
    P[n + 1] = ((2.0 * n + 1.0) * u * P[n] - n * P[n - 1]) / (n + 1.0);
  return P;
}

}  // namespace

std::vector<double> sgn_weight_matrix(const CompositeGrid& g) {
  const int m = g.m();
  const int q = g.q;
  std::vector<double> E(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double s = g.nodes[i] > g.nodes[j]   ? 1.0
                       : g.nodes[i] < g.nodes[j] ? -1.0
                                                 : 0.0;
      E[static_cast<std::size_t>(i) * m + j] = s * g.weights[j];
    }
  const QuadratureGrid& base = gauss_legendre(q);
  // beta[n][k] = (2n+1)/2 * w_k * P_n(u_k): Legendre coefficients of the
  // Lagrange basis on the panel's reference nodes.
  std::vector<double> beta(static_cast<std::size_t>(q) * q);
  for (int k = 0; k < q; ++k) {
    const std::vector<double> P = legendre_values(q - 1, base.nodes[k]);
    for (int n = 0; n < q; ++n)
      beta[static_cast<std::size_t>(n) * q + k] =
          0.5 * (2.0 * n + 1.0) * base.weights[k] * P[n];
  }
  for (int i = 0; i < m; ++i) {
    const int p = g.panel_of(i);
    const double a = g.edges[p], b = g.edges[p + 1];
    const double hw = 0.5 * (b - a), mid = 0.5 * (a + b);
    const double u = (g.nodes[i] - mid) / hw;
    const std::vector<double> P = legendre_values(q + 1, u);
    // J_n(u) = int_{-1}^{u} P_n
    std::vector<double> J(q);
    J[0] = u + 1.0;
    for (int n = 1; n < q; ++n) J[n] = (P[n + 1] - P[n - 1]) / (2.0 * n + 1.0);
    for (int k = 0; k < q; ++k) {
      double dot = 0.0;
      for (int n = 0; n < q; ++n)
        dot += beta[static_cast<std::size_t>(n) * q + k] * J[n];
      // int_panel sgn(x_i - y) l_k(y) dy = hw * (2 * dot - 2 * beta[0][k])
      E[static_cast<std::size_t>(i) * m + p * q + k] =
          hw * (2.0 * dot - 2.0 * beta[k]);
    }
  }
  return E;
}

}  // namespace goepf
