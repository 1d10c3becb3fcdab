#pragma once

#include <cmath>
#include <limits>

namespace goepf {

// Signed scalar stored as (sign, log of absolute value). Keeps Laplace-type
// quantities of size exp(+-thousands) exact in the exponent.
struct LogValue {
  int sign = 0;  // -1, 0, +1
  double log_mag = -std::numeric_limits<double>::infinity();

  static LogValue zero() { return {}; }
  static LogValue one() { return {1, 0.0}; }

  static LogValue from_log(int sign, double log_mag) {
    if (sign == 0 || (std::isinf(log_mag) && log_mag < 0))
      return zero();
    return {sign, log_mag};
  }

  static LogValue from_double(double v) {
    if (v == 0.0 || std::isnan(v)) return zero();
    return {v > 0 ? 1 : -1, std::log(std::fabs(v))};
  }

  bool is_zero() const { return sign == 0; }

  // Materialize; underflows to 0 and overflows to +-inf as doubles do.
  double value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_mag);
  }

  LogValue operator*(const LogValue& o) const {
    if (sign == 0 || o.sign == 0) return zero();
    return {sign * o.sign, log_mag + o.log_mag};
  }

  LogValue operator/(const LogValue& o) const {
    return {sign * o.sign, log_mag - o.log_mag};
  }

  LogValue operator-() const { return {-sign, log_mag}; }

  LogValue scaled(double c) const { return *this * from_double(c); }

  LogValue add(const LogValue& o) const {
    if (sign == 0) return o;
    if (o.sign == 0) return *this;
    const double hi = std::max(log_mag, o.log_mag);
    const double lo = std::min(log_mag, o.log_mag);
    const int hi_sign = (log_mag >= o.log_mag) ? sign : o.sign;
    if (sign == o.sign) return {sign, hi + std::log1p(std::exp(lo - hi))};
    const double d = lo - hi;
    if (d == 0.0) return zero();  // exact cancellation
    return {hi_sign, hi + std::log1p(-std::exp(d))};
  }

  LogValue sub(const LogValue& o) const { return add(-o); }
};

// log(1 + e^z), safe for large |z|.
inline double softplus(double z) {
  if (z > 36.0) return z;
  if (z < -745.0) return 0.0;
  return std::log1p(std::exp(z));
}

}  // namespace goepf
