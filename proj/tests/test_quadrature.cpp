#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "goepf/quadrature.hpp"

using namespace goepf;

TEST_CASE("gauss_legendre classical rules") {
  const QuadratureGrid& g1 = gauss_legendre(1);
  CHECK(g1.nodes[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(g1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

  const QuadratureGrid& g2 = gauss_legendre(2);
  CHECK(g2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(g2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(g2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));

  // m = 3 nodes are 0, +-sqrt(3/5); x^4 integrates exactly.
  const QuadratureGrid& g3 = gauss_legendre(3);
  CHECK(std::fabs(g3.nodes[0] + 0.774596669241483377) < 1e-15);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += g3.weights[i] * std::pow(g3.nodes[i], 4);
  CHECK(std::fabs(s - 0.4) < 1e-14);

  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre(513), std::invalid_argument);
}

TEST_CASE("grid invariants: weights sum and ordering") {
  for (int m : {4, 17, 64}) {
    const QuadratureGrid g = map_to_window(gauss_legendre(m), -2.5, 7.0);
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      s += g.weights[i];
      CHECK(g.weights[i] > 0.0);
      CHECK(g.nodes[i] > g.lo);
      CHECK(g.nodes[i] < g.hi);
      if (i) CHECK(g.nodes[i] > g.nodes[i - 1]);
    }
    CHECK(std::fabs(s - (g.hi - g.lo)) < 1e-12);
  }
  const CompositeGrid cg = composite_grid(-12.0, 12.0, 80, 5.0);
  double s = 0.0;
  for (double w : cg.weights) s += w;
  CHECK(std::fabs(s - 24.0) < 1e-12);
  CHECK(cg.panels() == 5);
  CHECK(cg.m() == 80);
}

TEST_CASE("integrate basics") {
  CHECK(integrate([](double x) { return x; }, 0, 1, 8) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::fabs(integrate([](double x) { return std::sin(x); }, 0, M_PI,
                            32) -
                  2.0) < 1e-10);
  // kink limits the order; composite panels engage for wide windows
  CHECK(std::fabs(integrate([](double x) { return std::fabs(x); }, -1, 1,
                            64) -
                  1.0) < 1e-3);
  CHECK(std::fabs(integrate([](double x) { return std::exp(-x); }, 0.0, 40.0,
                            24) -
                  1.0) < 1e-12);
  CHECK_THROWS_AS(
      integrate([](double x) { return 1.0 / x; }, -1.0, 1.0, 9),
      std::runtime_error);
}

TEST_CASE("integrate_semi_infinite") {
  CHECK(std::fabs(integrate_semi_infinite(
                      [](double x) { return std::exp(-x); }, 0.0, 1.0, 24) -
                  1.0) < 1e-10);
  CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 0.0; }, 0.0,
                                          -1.0, 8),
                  std::invalid_argument);
}

TEST_CASE("integrate_log_domain matches plain integration") {
  // constant e^{500} on (0,1)
  const LogValue c = integrate_log_domain(
      [](double) { return LogValue{1, 500.0}; }, 0.0, 1.0, 16);
  CHECK(c.sign == 1);
  CHECK(c.log_mag == doctest::Approx(500.0).epsilon(1e-12));

  // f = e^x on (0,1) -> log(e - 1)
  const LogValue e1 = integrate_log_domain(
      [](double x) { return LogValue{1, x}; }, 0.0, 1.0, 24);
  CHECK(e1.log_mag ==
        doctest::Approx(std::log(std::exp(1.0) - 1.0)).epsilon(1e-10));

  // antisymmetric integrand with a huge scale: massive cancellation
  const LogValue odd = integrate_log_domain(
      [](double x) {
        return LogValue{x >= 0 ? 1 : -1, 300.0 + std::log(std::fabs(x) + 1e-300)};
      },
      -1.0, 1.0, 24);
  CHECK((odd.sign == 0 || odd.log_mag < 300.0 + std::log(2.0) - 20.0));

  // all-zero signs -> zero result, not an error
  const LogValue z = integrate_log_domain(
      [](double) { return LogValue::zero(); }, 0.0, 1.0, 8);
  CHECK(z.sign == 0);

  // agreement with the plain route on random smooth integrands spanning
  // e^{-50}..e^{50}
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> amp(-45.0, 45.0), ph(0.0, 6.28);
  for (int rep = 0; rep < 100; ++rep) {
    const double a = amp(rng), b = ph(rng), c0 = amp(rng) * 0.1;
    auto f = [&](double x) { return std::exp(a * std::sin(x + b) * 0.1 + c0); };
    const double plain = integrate(f, 0.0, 2.0, 48);
    const LogValue lg = integrate_log_domain(
        [&](double x) { return LogValue{1, a * std::sin(x + b) * 0.1 + c0}; },
        0.0, 2.0, 48);
    CHECK(std::fabs(lg.value() / plain - 1.0) < 1e-12);
  }
}

TEST_CASE("integrate_power_singularity") {
  CHECK(integrate_power_singularity([](double) { return 1.0; }, 0.5, 16) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate_power_singularity([](double s) { return s; }, 0.5, 24) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(integrate_power_singularity(
            [](double s) { return 1.0 / ((1.0 + s) * (1.0 + s)); }, 0.0,
            32) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK_THROWS_AS(
      integrate_power_singularity([](double) { return 1.0; }, 1.0, 8),
      std::invalid_argument);
}

TEST_CASE("Richardson stability under m doubling") {
  auto f = [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); };
  const double a = integrate(f, -4.0, 4.0, 32);
  const double b = integrate(f, -4.0, 4.0, 64);
  CHECK(std::fabs(a - b) < 1e-12);
}

TEST_CASE("LogValue round trip and arithmetic") {
  for (double v : {3.5, -2.75e-200, 1.25e180, -1.0}) {
    const LogValue lv = LogValue::from_double(v);
    CHECK(lv.value() == doctest::Approx(v).epsilon(1e-12));
  }
  const LogValue big = LogValue{1, 650.0};
  const LogValue rt = LogValue::from_double(big.value());
  CHECK(rt.log_mag == doctest::Approx(650.0).epsilon(1e-12));

  const LogValue a = LogValue::from_double(3.0);
  const LogValue b = LogValue::from_double(-2.0);
  CHECK(a.add(b).value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.sub(b).value() == doctest::Approx(5.0).epsilon(1e-12));
  CHECK((a * b).value() == doctest::Approx(-6.0).epsilon(1e-12));
  CHECK((a / b).value() == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(a.sub(a).sign == 0);
}

TEST_CASE("sgn_weight_matrix integrates sgn(x_i - y) * smooth exactly") {
  const CompositeGrid g = composite_grid(-3.0, 5.0, 64, 4.0);
  const std::vector<double> E = sgn_weight_matrix(g);
  const int m = g.m();
  // against analytic integral of sgn(x0 - y) * y^3 over the window
  auto anti = [](double y) { return y * y * y * y / 4.0; };
  for (int i : {0, 7, m / 2, m - 3}) {
    const double x0 = g.nodes[i];
    double s = 0.0;
    for (int j = 0; j < m; ++j)
      s += E[static_cast<std::size_t>(i) * m + j] * g.nodes[j] * g.nodes[j] *
           g.nodes[j];
    const double exact =
        (anti(x0) - anti(g.lo)) - (anti(g.hi) - anti(x0));
    CHECK(std::fabs(s - exact) < 1e-12);
  }
}
