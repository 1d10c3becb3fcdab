#pragma once

#include <utility>

namespace goepf {

struct AiryValue {
  double ai = 0.0;
  double ai_prime = 0.0;
};

// Scaled pair (e^{zeta} Ai(x), e^{zeta} Ai'(x)) with zeta = (2/3) x^{3/2}.
struct ScaledAiry {
  double ai = 0.0;
  double ai_prime = 0.0;
};

// Ai(x) and Ai'(x). Documented accuracy window |x| <= 30; outside it a
// range error is thrown rather than extrapolating.
AiryValue airy(double x);

// Same evaluation without the window clamp: valid for any x >= -30 (the
// positive-side asymptotics hold for all large x and underflow gracefully).
// Support routine for kernel integrands whose shifted arguments exceed the
// public window.
AiryValue airy_unchecked(double x);

// e^{(2/3) x^{3/2}} Ai(x) for x >= 0; finite and positive for all x >= 0.
double airy_scaled(double x);
ScaledAiry airy_scaled_pair(double x);

// int_x^inf Ai; x >= -30. Tiny but relatively accurate for large x.
double airy_upper_tail(double x);

// int_x^inf Ai^2 = Ai'(x)^2 - x Ai(x)^2; x in the accuracy window.
double airy_square_tail(double x);

// e^{(4/3) x^{3/2}} int_x^inf Ai^2 for x >= 0; stays accurate where the
// closed form above would cancel catastrophically.
double airy_square_tail_scaled(double x);

// (Gamma(u), Be(u, v)); u, v > 0.
std::pair<double, double> gamma_beta(double u, double v);

double gamma_fn(double u);

// (2k-1)!! with (-1)!! = 1; k <= 33, overflow raises.
long long double_factorial(int k);

}  // namespace goepf
