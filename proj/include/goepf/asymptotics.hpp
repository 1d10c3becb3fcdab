#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace goepf {

// Variational profiles V_n(x) = n x - (1/3) x^{3/2} and
// U_n(x) = n x - (2/3) x^{3/2}.
struct Profile {
  enum class Kind { V, U };
  Kind kind = Kind::V;
  double n = 1.0;

  double eval(double x) const;
  // (value at sigma, max over [0, sigma]); argmax is min(sigma, 4n^2) for V
  // and min(sigma, n^2) for U.
  std::pair<double, double> eval_with_max(double sigma) const;
};

struct LyapunovFit {
  double slope = 0.0;      // coefficient of t
  double log_coeff = 0.0;  // coefficient of log t
  double intercept = 0.0;
  double residual = 0.0;   // max |fit - sample|
};

// Least squares of log_value ~ slope * t + log_coeff * log t + intercept.
// Needs >= 4 samples with distinct t.
LyapunovFit lyapunov_fit(const std::vector<std::pair<double, double>>& samples);

// Closed form (2/3) s^{3/2} with argmax p = sqrt(s).
std::pair<double, double> rate_function(double s);

// sup_{p > 0} (p s - p^3 / 3) by grid search plus golden-section refinement.
double rate_function_numeric(double s);

// max over p_grid of (p s t - log_moment(p, t)) / t. The default provider is
// wired by the caller (fractional_moment-based in the CLI and tests).
double chernoff_tail(double s, double t, const std::vector<double>& p_grid,
                     const std::function<double(double, double)>& log_moment);

}  // namespace goepf
