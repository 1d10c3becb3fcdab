#include "goepf/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace goepf {

double Profile::eval(double x) const {
  const double c = kind == Kind::V ? 1.0 / 3.0 : 2.0 / 3.0;
  return n * x - c * std::pow(x, 1.5);
}

std::pair<double, double> Profile::eval_with_max(double sigma) const {
  if (!(sigma >= 0.0)) throw std::domain_error("profile: sigma must be >= 0");
  const double xmax = kind == Kind::V ? 4.0 * n * n : n * n;
  return {eval(sigma), eval(std::min(sigma, xmax))};
}

LyapunovFit lyapunov_fit(
    const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 4)
    throw std::invalid_argument("lyapunov_fit: need at least 4 samples");
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j)
      if (samples[i].first == samples[j].first)
        throw std::invalid_argument("lyapunov_fit: duplicate t values");
  // Normal equations on the basis {t, log t, 1}.
  double a[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double b[3] = {0, 0, 0};
  for (const auto& [t, y] : samples) {
    const double row[3] = {t, std::log(t), 1.0};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) a[r][c] += row[r] * row[c];
      b[r] += row[r] * y;
    }
  }
  // Gaussian elimination with partial pivoting.
  int perm[3] = {0, 1, 2};
  for (int k = 0; k < 3; ++k) {
    int piv = k;
    for (int r = k + 1; r < 3; ++r)
      if (std::fabs(a[perm[r]][k]) > std::fabs(a[perm[piv]][k])) piv = r;
    std::swap(perm[k], perm[piv]);
    const double p = a[perm[k]][k];
    if (std::fabs(p) < 1e-12)
      throw std::invalid_argument("lyapunov_fit: rank-deficient design");
    for (int r = k + 1; r < 3; ++r) {
      const double f = a[perm[r]][k] / p;
      for (int c = k; c < 3; ++c) a[perm[r]][c] -= f * a[perm[k]][c];
      b[perm[r]] -= f * b[perm[k]];
    }
  }
  double sol[3];
  for (int k = 2; k >= 0; --k) {
    double s = b[perm[k]];
    for (int c = k + 1; c < 3; ++c) s -= a[perm[k]][c] * sol[c];
    sol[k] = s / a[perm[k]][k];
  }
  LyapunovFit fit{sol[0], sol[1], sol[2], 0.0};
  for (const auto& [t, y] : samples) {
    const double pred = fit.slope * t + fit.log_coeff * std::log(t) +
                        fit.intercept;
    fit.residual = std::max(fit.residual, std::fabs(pred - y));
  }
  return fit;
}

std::pair<double, double> rate_function(double s) {
  if (!(s >= 0.0)) throw std::domain_error("rate_function: s must be >= 0");
  return {2.0 / 3.0 * std::pow(s, 1.5), std::sqrt(s)};
}

double rate_function_numeric(double s) {
  if (!(s >= 0.0)) throw std::domain_error("rate_function_numeric: s < 0");
  auto obj = [&](double p) { return p * s - p * p * p / 3.0; };
  const double p_hi = 3.0 * std::sqrt(s) + 1.0;
  const int n_coarse = 400;
  double best_p = 0.0, best = 0.0;
  for (int i = 0; i <= n_coarse; ++i) {
    const double p = p_hi * i / n_coarse;
    const double v = obj(p);
    if (v > best) {
      best = v;
      best_p = p;
    }
  }
  double lo = std::max(0.0, best_p - p_hi / n_coarse);
  double hi = best_p + p_hi / n_coarse;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    if (obj(c) > obj(d)) {
      hi = d;
      d = c;
      c = hi - gr * (hi - lo);
    } else {
      lo = c;
      c = d;
      d = lo + gr * (hi - lo);
    }
  }
  return obj(0.5 * (lo + hi));
}

double chernoff_tail(double s, double t, const std::vector<double>& p_grid,
                     const std::function<double(double, double)>& log_moment) {
  if (!(s > 0.0)) throw std::domain_error("chernoff_tail: s must be > 0");
  if (p_grid.empty())
    throw std::invalid_argument("chernoff_tail: empty p grid");
  double best = -std::numeric_limits<double>::infinity();
  for (double p : p_grid)
    best = std::max(best, (p * s * t - log_moment(p, t)) / t);
  return best;
}

}  // namespace goepf
