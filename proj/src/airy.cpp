#include "goepf/airy.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "goepf/quadrature.hpp"

namespace goepf {

namespace {

constexpr double kAi0 = 0.35502805388781723926;    // Ai(0)
constexpr double kAip0 = -0.25881940379280679841;  // Ai'(0)
constexpr double kWindow = 30.0;
constexpr double kSwitch = 6.0;   // series <-> asymptotic expansion
constexpr double kTailSw = 8.0;   // table <-> scaled quadrature for the tail
constexpr int kAsymTerms = 40;

double zeta_of(double x) { return 2.0 / 3.0 * std::pow(std::fabs(x), 1.5); }

// DLMF 9.7 coefficients u_k, v_k and the Cauchy-product coefficients of
// v(t)^2 - u(t)^2 used by the scaled square tail.
struct AsymCoeffs {
  std::array<double, kAsymTerms + 1> u{}, v{}, w{};
  AsymCoeffs() {
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 0; k < kAsymTerms; ++k) {
      u[k + 1] = u[k] * (6.0 * k + 1.0) * (6.0 * k + 5.0) / (72.0 * (k + 1.0));
      v[k + 1] = u[k + 1] * (6.0 * (k + 1) + 1.0) / (1.0 - 6.0 * (k + 1));
    }
    for (int m = 0; m <= kAsymTerms; ++m) {
      double s = 0.0;
      for (int j = 0; j <= m; ++j) s += v[j] * v[m - j] - u[j] * u[m - j];
      w[m] = s;
    }
  }
};

const AsymCoeffs& coeffs() {
  static const AsymCoeffs c;
  return c;
}

// Evaluate sum_k c_k t^k, truncating at the smallest term (asymptotic
// series); assumes |t| < 1.
double asym_sum(const std::array<double, kAsymTerms + 1>& c, double t) {
  double sum = c[0];
  double term = c[0];
  double best = std::numeric_limits<double>::max();
  for (int k = 1; k <= kAsymTerms; ++k) {
    term = c[k] * std::pow(t, k);
    const double mag = std::fabs(term);
    if (mag >= best) break;
    best = mag;
    sum += term;
    if (mag < 1e-18 * std::fabs(sum)) break;
  }
  return sum;
}

AiryValue maclaurin(double x) {
  if (std::fabs(x) < 1e-100)
    return {kAi0 + kAip0 * x, kAip0 + 0.5 * kAi0 * x * x};
  const double x3 = x * x * x;
  double a = 1.0, b = x;  // f- and g-series terms
  double f = a, g = b, fp = 0.0, gp = 1.0;
  for (int k = 0; k < 80; ++k) {
    a *= x3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
    b *= x3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
    f += a;
    g += b;
    fp += a * (3.0 * k + 3.0) / x;
    gp += b * (3.0 * k + 4.0) / x;
    if (std::fabs(a) + std::fabs(b) <
        1e-18 * (std::fabs(f) + std::fabs(g)))
      break;
  }
  return {kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

ScaledAiry asym_pos_scaled(double x) {
  const AsymCoeffs& c = coeffs();
  const double z = zeta_of(x);
  const double t = -1.0 / z;
  const double x14 = std::pow(x, 0.25);
  const double pref = 0.5 / std::sqrt(M_PI);
  return {pref / x14 * asym_sum(c.u, t), -pref * x14 * asym_sum(c.v, t)};
}

AiryValue asym_neg(double x) {
  const AsymCoeffs& c = coeffs();
  const double z = -x;
  const double zeta = zeta_of(x);
  const double theta = zeta - 0.25 * M_PI;
  const double t2 = 1.0 / (zeta * zeta);
  // Even/odd splits of the u- and v-series with alternating signs.
  std::array<double, kAsymTerms + 1> ue{}, uo{}, ve{}, vo{};
  for (int k = 0; 2 * k <= kAsymTerms; ++k) {
    const double s = (k % 2 == 0) ? 1.0 : -1.0;
    ue[k] = s * c.u[2 * k];
    ve[k] = s * c.v[2 * k];
    if (2 * k + 1 <= kAsymTerms) {
      uo[k] = s * c.u[2 * k + 1];
      vo[k] = s * c.v[2 * k + 1];
    }
  }
  const double P = asym_sum(ue, t2);
  const double Q = asym_sum(uo, t2) / zeta;
  const double R = asym_sum(ve, t2);
  const double S = asym_sum(vo, t2) / zeta;
  const double z14 = std::pow(z, 0.25);
  const double sp = 1.0 / std::sqrt(M_PI);
  const double ct = std::cos(theta), st = std::sin(theta);
  return {sp / z14 * (ct * P + st * Q), sp * z14 * (st * R - ct * S)};
}

AiryValue airy_eval(double x) {
  if (std::fabs(x) <= kSwitch) return maclaurin(x);
  if (x > 0) {
    const ScaledAiry s = asym_pos_scaled(x);
    const double e = std::exp(-zeta_of(x));
    return {s.ai * e, s.ai_prime * e};
  }
  return asym_neg(x);
}

// Stable zeta(x+u) - zeta(x) for x, u >= 0.
double zeta_diff(double x, double u) {
  const double a = x + u, b = x;
  const double sa = std::sqrt(a), sb = std::sqrt(b);
  return 2.0 / 3.0 * u * (a + sa * sb + b) / (sa + sb);
}

// int_x^inf Ai for x >= kTailSw via the scaled representation.
double tail_scaled_quadrature(double x) {
  const double span = 48.0 / std::sqrt(x);
  const double integral = integrate(
      [&](double u) {
        return airy_scaled(x + u) * std::exp(-zeta_diff(x, u));
      },
      0.0, span, 24);
  return std::exp(-zeta_of(x)) * integral;
}

// Cumulative-integral table for int_x^inf Ai on [-30.6, 8.2], cubic Hermite
// with the exact derivative -Ai at the table nodes.
struct TailTable {
  static constexpr double kLo = -30.6;
  static constexpr double kHi = 8.2;
  static constexpr double kH = 0.02;
  std::vector<double> val;
  TailTable() {
    const int n = static_cast<int>(std::lround((kHi - kLo) / kH));
    val.assign(n + 1, 0.0);
    val[n] = tail_scaled_quadrature(kHi);
    const QuadratureGrid& g = gauss_legendre(6);
    for (int i = n - 1; i >= 0; --i) {
      const double a = kLo + i * kH, b = a + kH;
      const double mid = 0.5 * (a + b), hw = 0.5 * kH;
      double s = 0.0;
      for (int k = 0; k < 6; ++k)
        s += hw * g.weights[k] * airy_eval(mid + hw * g.nodes[k]).ai;
      val[i] = val[i + 1] + s;
    }
  }
  double eval(double x) const {
    const int n = static_cast<int>(val.size()) - 1;
    int i = static_cast<int>(std::floor((x - kLo) / kH));
    i = std::max(0, std::min(n - 1, i));
    const double x0 = kLo + i * kH;
    const double t = (x - x0) / kH;
    const double f0 = val[i], f1 = val[i + 1];
    const double d0 = -airy_eval(x0).ai * kH;
    const double d1 = -airy_eval(x0 + kH).ai * kH;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * d0 +
           (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * d1;
  }
};

const TailTable& tail_table() {
  static const TailTable t;
  return t;
}

// log T(x) on [7.8, 110] with the exact derivative -Ai/T; beyond 110 the
// tail underflows double precision.
struct LogTailTable {
  static constexpr double kLo = 7.8;
  static constexpr double kHi = 110.0;
  static constexpr double kH = 0.05;
  std::vector<double> logv, dlog;
  LogTailTable() {
    const int n = static_cast<int>(std::lround((kHi - kLo) / kH));
    logv.resize(n + 1);
    dlog.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
      const double x = kLo + i * kH;
      const double ts = tail_scaled_quadrature_scaled(x);
      logv[i] = std::log(ts) - zeta_of(x);
      dlog[i] = -asym_pos_scaled(x).ai / ts;
    }
  }
  // scaled integral e^{zeta} T(x), to avoid underflow during the build
  static double tail_scaled_quadrature_scaled(double x) {
    const double span = 48.0 / std::sqrt(x);
    return integrate(
        [&](double u) {
          return airy_scaled(x + u) * std::exp(-zeta_diff(x, u));
        },
        0.0, span, 24);
  }
  double eval_log(double x) const {
    const int n = static_cast<int>(logv.size()) - 1;
    int i = static_cast<int>(std::floor((x - kLo) / kH));
    i = std::max(0, std::min(n - 1, i));
    const double x0 = kLo + i * kH;
    const double t = (x - x0) / kH;
    const double f0 = logv[i], f1 = logv[i + 1];
    const double d0 = dlog[i] * kH, d1 = dlog[i + 1] * kH;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * d0 +
           (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * d1;
  }
};

const LogTailTable& log_tail_table() {
  static const LogTailTable t;
  return t;
}

}  // namespace

AiryValue airy(double x) {
  if (!(std::fabs(x) <= kWindow))
    throw std::domain_error("airy: argument outside accuracy window [-30, 30]");
  return airy_eval(x);
}

AiryValue airy_unchecked(double x) {
  if (!(x >= -kWindow - 1.0))
    throw std::domain_error("airy_unchecked: argument below -31");
  return airy_eval(x);
}

double airy_scaled(double x) {
  if (!(x >= 0.0)) throw std::domain_error("airy_scaled: negative argument");
  if (x <= kSwitch) return maclaurin(x).ai * std::exp(zeta_of(x));
  return asym_pos_scaled(x).ai;
}

ScaledAiry airy_scaled_pair(double x) {
  if (!(x >= 0.0))
    throw std::domain_error("airy_scaled_pair: negative argument");
  if (x <= kSwitch) {
    const AiryValue v = maclaurin(x);
    const double e = std::exp(zeta_of(x));
    return {v.ai * e, v.ai_prime * e};
  }
  return asym_pos_scaled(x);
}

double airy_upper_tail(double x) {
  if (!(x >= -kWindow))
    throw std::domain_error("airy_upper_tail: argument below -30");
  if (x >= kTailSw) {
    if (x > 110.0) return 0.0;  // below the double-precision floor
    return std::exp(log_tail_table().eval_log(x));
  }
  return tail_table().eval(x);
}

double airy_square_tail(double x) {
  if (!(std::fabs(x) <= kWindow))
    throw std::domain_error("airy_square_tail: argument outside window");
  if (x >= kSwitch)
    return airy_square_tail_scaled(x) * std::exp(-2.0 * zeta_of(x));
  const AiryValue v = airy_eval(x);
  return v.ai_prime * v.ai_prime - x * v.ai * v.ai;
}

double airy_square_tail_scaled(double x) {
  if (!(x >= 0.0))
    throw std::domain_error("airy_square_tail_scaled: negative argument");
  if (x < kSwitch) {
    const AiryValue v = maclaurin(x);
    return (v.ai_prime * v.ai_prime - x * v.ai * v.ai) *
           std::exp(2.0 * zeta_of(x));
  }
  // sqrt(x)/(4 pi) * (v(t)^2 - u(t)^2); the difference series avoids the
  // cancellation of Ai'^2 - x Ai^2 at large x.
  const double t = -1.0 / zeta_of(x);
  return std::sqrt(x) / (4.0 * M_PI) * asym_sum(coeffs().w, t);
}

namespace {

// Lanczos approximation, g = 7, 9 terms.
double lanczos_gamma(double z) {
  static const double c[9] = {
      0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,  12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z < 0.5) return M_PI / (std::sin(M_PI * z) * lanczos_gamma(1.0 - z));
  z -= 1.0;
  double a = c[0];
  const double t = z + 7.5;
  for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

}  // namespace

double gamma_fn(double u) {
  if (!(u > 0.0)) throw std::domain_error("gamma_fn: argument must be > 0");
  return lanczos_gamma(u);
}

std::pair<double, double> gamma_beta(double u, double v) {
  if (!(u > 0.0 && v > 0.0))
    throw std::domain_error("gamma_beta: arguments must be > 0");
  const double gu = lanczos_gamma(u);
  return {gu, gu * lanczos_gamma(v) / lanczos_gamma(u + v)};
}

long long double_factorial(int k) {
  if (k < 0 || k > 33)
    throw std::domain_error("double_factorial: k outside [0, 33]");
  long long r = 1;
  for (int j = 1; j <= k; ++j) {
    if (__builtin_mul_overflow(r, 2LL * j - 1LL, &r))
      throw std::overflow_error("double_factorial: result overflows");
  }
  return r;
}

}  // namespace goepf
