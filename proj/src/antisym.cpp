#include "goepf/antisym.hpp"

#include <algorithm>
#include <cmath>

namespace goepf {

void validate_antisym(const AntisymMatrix& m, double tol) {
  if (m.dim % 2 != 0)
    throw std::invalid_argument("antisym: dimension must be even");
  double scale = 1.0;
  for (double v : m.a) scale = std::max(scale, std::fabs(v));
  for (int i = 0; i < m.dim; ++i) {
    if (std::fabs(m.at(i, i)) != 0.0)
      throw std::invalid_argument("antisym: nonzero diagonal entry");
    for (int j = i + 1; j < m.dim; ++j)
      if (std::fabs(m.at(i, j) + m.at(j, i)) > tol * scale)
        throw std::invalid_argument("antisym: antisymmetry violated");
  }
}

namespace {

template <class T>
double mag(const T& v) {
  return std::abs(v);
}

// Skew elimination: after each 2x2 pivot block the trailing matrix is
// updated by a congruence that keeps the Pfaffian invariant up to the
// recorded row swaps.
template <class T>
T pfaffian_impl(std::vector<T>& a, int n) {
  auto at = [&](int i, int j) -> T& {
    return a[static_cast<std::size_t>(i) * n + j];
  };
  T pf = T(1);
  int sign = 1;
  for (int k = 0; k + 1 < n; k += 2) {
    int piv = k + 1;
    for (int j = k + 2; j < n; ++j)
      if (mag(at(k, j)) > mag(at(k, piv))) piv = j;
    if (mag(at(k, piv)) == 0.0) return T(0);
    if (piv != k + 1) {
      for (int j = 0; j < n; ++j) std::swap(at(k + 1, j), at(piv, j));
      for (int i = 0; i < n; ++i) std::swap(at(i, k + 1), at(i, piv));
      sign = -sign;
    }
    const T p = at(k, k + 1);
    pf *= p;
    for (int i = k + 2; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const T upd =
            (at(k, j) * at(k + 1, i) - at(k, i) * at(k + 1, j)) / p;
        at(i, j) += upd;
        at(j, i) = -at(i, j);
      }
    }
  }
  return static_cast<double>(sign) * pf;
}

}  // namespace

double pfaffian(const AntisymMatrix& m) {
  validate_antisym(m);
  std::vector<double> work = m.a;
  return pfaffian_impl(work, m.dim);
}

std::complex<double> pfaffian_complex(std::vector<std::complex<double>> a,
                                      int dim) {
  if (dim % 2 != 0)
    throw std::invalid_argument("pfaffian_complex: dimension must be even");
  return pfaffian_impl(a, dim);
}

LogValue determinant(std::vector<double> m, int dim) {
  if (static_cast<std::size_t>(dim) * dim != m.size())
    throw std::invalid_argument("determinant: shape mismatch");
  auto at = [&](int i, int j) -> double& {
    return m[static_cast<std::size_t>(i) * dim + j];
  };
  double scale = 0.0;
  for (double v : m) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0) return LogValue::zero();
  int sign = 1;
  double log_abs = 0.0;
  for (int k = 0; k < dim; ++k) {
    int piv = k;
    for (int i = k + 1; i < dim; ++i)
      if (std::fabs(at(i, k)) > std::fabs(at(piv, k))) piv = i;
    const double p = at(piv, k);
    if (std::fabs(p) < 1e-13 * scale) return LogValue::zero();
    if (piv != k) {
      for (int j = 0; j < dim; ++j) std::swap(at(k, j), at(piv, j));
      sign = -sign;
    }
    if (p < 0) sign = -sign;
    log_abs += std::log(std::fabs(p));
    for (int i = k + 1; i < dim; ++i) {
      const double f = at(i, k) / p;
      if (f == 0.0) continue;
      for (int j = k + 1; j < dim; ++j) at(i, j) -= f * at(k, j);
    }
  }
  return LogValue{sign, log_abs};
}

std::vector<LogValue> sqrt_continued(const std::vector<LogValue>& path) {
  if (path.empty())
    throw std::invalid_argument("sqrt_continued: empty path");
  if (path.front().sign != 1 || std::fabs(path.front().log_mag) > 1e-9)
    throw std::invalid_argument("sqrt_continued: path must start at 1");
  constexpr double kMaxLogJump = 4.6051701859880914;  // log(100)
  std::vector<LogValue> out(path.size());
  out[0] = LogValue::one();
  int sign = 1;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const LogValue& d = path[k];
    if (d.sign <= 0) throw PathRefineError(k);
    if (std::fabs(d.log_mag - path[k - 1].log_mag) > 2.0 * kMaxLogJump)
      throw PathRefineError(k);
    out[k] = LogValue{sign, 0.5 * d.log_mag};
  }
  return out;
}

}  // namespace goepf
