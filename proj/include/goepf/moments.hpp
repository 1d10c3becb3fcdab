#pragma once

#include <functional>
#include <vector>

#include "goepf/log_value.hpp"

namespace goepf {

// p > 0 decomposed as p = n - 1 + alpha with n = floor(p) + 1 and
// alpha in [0, 1).
struct MomentParams {
  double p = 1.0;
  int n = 2;
  double alpha = 0.0;
  double t = 1.0;
};

MomentParams moment_params(double p, double t);

// 2^n (2n-1)!! 4^{alpha-1} / Gamma(1-alpha) * Be(1-alpha, (2n-1)/2 + alpha)
double c_constant(const MomentParams& mp);

enum class LeadingRoute { split, direct };

// Leading term A_p(t) of the moment decomposition. The split route uses the
// closed-form inner s-integral over [0, infinity) minus a numeric [1, inf)
// correction; the direct route integrates the [0, 1] inner integral
// numerically. Window: t <= 200, p <= 4.
LogValue leading_term(const MomentParams& mp,
                      LeadingRoute route = LeadingRoute::split);

struct HigherConfig {
  double lo = -12.0;
  double hi = 12.0;
  int m = 40;             // tensor-quadrature nodes per axis
  double tau_panel = 2.0; // panel width of the log-s integration
  int tau_q = 12;         // nodes per tau panel
};

// Higher-order term B_{p,L}(t), L in {2, 3}; t <= 30.
LogValue higher_term(const MomentParams& mp, int L,
                     const HigherConfig& cfg = HigherConfig{});

// n^n e^{-n} / (Gamma(1-alpha) (n + alpha)); uniform in t.
double remainder_bound(const MomentParams& mp);

struct MomentBreakdown {
  LogValue leading;
  std::vector<LogValue> higher;  // B_{p,2} .. B_{p,L_max}
  double remainder = 0.0;        // interval half-width, not folded into total
  LogValue total;                // leading + sum of higher
};

MomentBreakdown fractional_moment(const MomentParams& mp, int L_max,
                                  const HigherConfig& cfg = HigherConfig{});

struct Composition {
  std::vector<int> parts;
  int n = 0;
  double multinomial() const;  // n! / prod parts!
};

// All (m_1..m_L) with nonnegative parts summing to n; refuses above 10^6.
std::vector<Composition> compositions(int L, int n);

// E[X^p] from the Laplace transform: dL(k, s) must return the k-th
// s-derivative of E[e^{-sX}]. The [0,1] part removes the s^{-alpha}
// singularity by substitution; the [1, s_max) tail is mapped to a finite
// interval through s = r^{-2}.
double moment_from_laplace(const std::function<double(int, double)>& dL,
                           const MomentParams& mp,
                           double s_max = std::numeric_limits<double>::infinity());

}  // namespace goepf
