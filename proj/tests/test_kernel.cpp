#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "goepf/airy.hpp"
#include "goepf/kernel.hpp"
#include "goepf/quadrature.hpp"

using namespace goepf;

// K12(0,0) = Ai'(0)^2 + Ai(0)/3 (square tail plus half the Ai mass left of
// the diagonal); 19-digit reference.
static constexpr double kK12At00 = 0.1853301684089363872;

TEST_CASE("envelope F_{alpha,beta}") {
  const Envelope f{1.0 / 3.0, 2.0};
  CHECK(f(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f(-3.0) == doctest::Approx(16.0).epsilon(1e-14));
  const Envelope g{1.0 / 3.0, 1.0}, h{2.0 / 3.0, 2.0};
  for (double x : {-5.0, -0.5, 0.0, 1.5, 2.5, 7.0})
    CHECK(std::fabs(g(x) * g(x) - h(x)) <= 1e-12 * h(x));
  // monotone in beta for x <= 0
  const Envelope b1{0.5, 0.75}, b2{0.5, 1.5};
  for (double x : {-4.0, -1.0, -0.1}) CHECK(b1(x) <= b2(x));
}

TEST_CASE("diagonal specializations") {
  CHECK(k_entry({1, 1}, 0.7, 0.7) == 0.0);
  CHECK(k_entry({1, 1}, -3.1, -3.1) == 0.0);
  CHECK(k_entry({2, 2}, 0.0, 0.0) == 0.0);
  CHECK(std::fabs(k_entry({1, 2}, 0.0, 0.0) - kK12At00) < 1e-10);
  CHECK(std::fabs(k12_diag(0.0) - kK12At00) < 1e-12);
}

TEST_CASE("k12_diag agrees with the defining quadrature") {
  for (double x : {-8.0, -3.0, -1.0, 0.0, 0.5, 2.0, 5.0}) {
    const double via_entry = k_entry({1, 2}, x, x);
    CHECK(std::fabs(k12_diag(x) - via_entry) < 1e-10);
  }
}

TEST_CASE("k12_diag log mode matches plain mode") {
  for (double x : {0.0, 0.5, 2.0, 6.0, 11.0, 20.0}) {
    const LogValue lv = k12_diag_log(x);
    CHECK(lv.sign == 1);
    CHECK(std::fabs(lv.log_mag - std::log(k12_diag(x))) < 1e-10);
  }
  // representable far beyond the plain window
  const LogValue far = k12_diag_log(300.0);
  CHECK(far.sign == 1);
  CHECK(far.log_mag < -2000.0);
  CHECK(std::isfinite(far.log_mag));
  CHECK_THROWS_AS(k12_diag_log(-0.5), std::domain_error);
}

TEST_CASE("k12_diag envelope bounds (fitted constants)") {
  // x >= 0: F_{2/3,0}(x) / (C (1+x)^{1/4}) <= K12(x,x) <= C F / (1+x)^{1/4}
  const Envelope env{2.0 / 3.0, 0.0};
  double c_up = 0.0, c_lo = 0.0;
  for (double x = 0.0; x <= 10.0; x += 0.05) {
    const double v = k12_diag(x);
    c_up = std::max(c_up, v * std::pow(1.0 + x, 0.25) / env(x));
    c_lo = std::max(c_lo, env(x) / (std::pow(1.0 + x, 0.25) * v));
  }
  CHECK(std::isfinite(c_up));
  CHECK(std::isfinite(c_lo));
  const double c = std::max(c_up, c_lo);
  for (double x = 0.0; x <= 10.0; x += 0.025) {
    const double v = k12_diag(x);
    CHECK(v <= 1.0001 * c * env(x) / std::pow(1.0 + x, 0.25));
    CHECK(v >= env(x) / (1.0001 * c * std::pow(1.0 + x, 0.25)));
  }
  // x <= 0: 0 <= K12(x,x) <= C sqrt(1-x)
  double c_neg = 0.0;
  for (double x = -10.0; x <= 0.0; x += 0.05) {
    const double v = k12_diag(x);
    CHECK(v >= -1e-10);
    c_neg = std::max(c_neg, v / std::sqrt(1.0 - x));
  }
  CHECK(std::isfinite(c_neg));
}

TEST_CASE("primary vs alternate formulas on a grid") {
  // 20 x 20 grid in [-8, 6]^2
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const double x = -8.0 + 14.0 * i / 19.0;
      const double y = -8.0 + 14.0 * j / 19.0;
      const double k11p = k_entry({1, 1}, x, y, KernelFormula::primary);
      const double k11a = k_entry({1, 1}, x, y, KernelFormula::alternate);
      CHECK(std::fabs(k11p - k11a) < 1e-8);
      const double k22p = k_entry({2, 2}, x, y, KernelFormula::primary);
      const double k22a = k_entry({2, 2}, x, y, KernelFormula::alternate);
      CHECK(std::fabs(k22p - k22a) < 1e-8);
    }
}

TEST_CASE("entry symmetries and the sgn convention") {
  const double x = 1.3, y = -2.1;
  CHECK(k_entry({2, 1}, x, y) ==
        doctest::Approx(-k_entry({1, 2}, y, x)).epsilon(1e-14));
  CHECK(std::fabs(k_entry({1, 1}, x, y) + k_entry({1, 1}, y, x)) < 1e-13);
  // sgn(0) = 0: K22 is continuous through the diagonal only in its smooth
  // part; the jump is exactly -1/2 across it
  const double just_above = k_entry({2, 2}, 1.0 + 1e-9, 1.0);
  const double just_below = k_entry({2, 2}, 1.0 - 1e-9, 1.0);
  CHECK(std::fabs((just_above - just_below) + 0.5) < 1e-6);
}

TEST_CASE("assemble: block layout and antisymmetry") {
  const EvaluationPoints pts{{-1.5, 0.3, 2.2}};
  const AntisymMatrix d = assemble(pts);
  CHECK(d.dim == 6);
  validate_antisym(d, 1e-12);
  // D(2i-1, 2j-1) = K11(x_i, x_j) etc (1-based paper layout)
  CHECK(std::fabs(d.at(0, 2) - k_entry({1, 1}, -1.5, 0.3)) < 1e-10);
  CHECK(std::fabs(d.at(0, 3) - k_entry({1, 2}, -1.5, 0.3)) < 1e-10);
  CHECK(std::fabs(d.at(1, 2) - k_entry({2, 1}, -1.5, 0.3)) < 1e-10);
  CHECK(std::fabs(d.at(1, 3) - k_entry({2, 2}, -1.5, 0.3)) < 1e-10);
  // exact zero diagonal blocks
  CHECK(d.at(0, 2) == -d.at(2, 0));
  CHECK(d.at(4, 5) == doctest::Approx(k12_diag(2.2)).epsilon(1e-10));

  // L = 1: D = [[0, K12], [-K12, 0]]
  const AntisymMatrix d1 = assemble(EvaluationPoints{{0.0}});
  CHECK(d1.dim == 2);
  CHECK(std::fabs(d1.at(0, 1) - kK12At00) < 1e-10);
}

TEST_CASE("correlation values and positivity") {
  CHECK(std::fabs(correlation(EvaluationPoints{{0.0}}) - kK12At00) < 1e-10);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-7.0, 4.0);
  for (int rep = 0; rep < 40; ++rep) {
    const int L = 1 + static_cast<int>(rng() % 3);
    std::vector<double> pts(L);
    for (double& p : pts) p = u(rng);
    CHECK(correlation(EvaluationPoints{pts}) >= -1e-10);
  }
}

TEST_CASE("correlation obeys both Pfaffian growth envelopes") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-7.0, 4.0);
  const Envelope f13_2{1.0 / 3.0, 2.0}, f23_2{2.0 / 3.0, 2.0};
  double c_had = 0.0, c_fac = 0.0;
  for (int rep = 0; rep < 60; ++rep) {
    const int L = 2 + static_cast<int>(rng() % 2);
    std::vector<double> pts(L);
    for (double& p : pts) p = u(rng);
    const double rho = std::fabs(correlation(EvaluationPoints{pts}));
    double e13 = 1.0, e23 = 1.0;
    for (double p : pts) {
      e13 *= f13_2(p);
      e23 *= f23_2(p);
    }
    double fact = 1.0;
    for (int j = 2; j <= 2 * L; ++j) fact *= j;
    c_had = std::max(c_had, std::pow(rho / (std::pow(2.0 * L, 0.5 * L) * e13),
                                     1.0 / L));
    c_fac = std::max(c_fac, std::pow(rho / (std::sqrt(fact) * e23), 1.0 / L));
  }
  CHECK(std::isfinite(c_had));
  CHECK(std::isfinite(c_fac));
  CHECK(c_had < 20.0);
  CHECK(c_fac < 20.0);
}

TEST_CASE("entry bound |D(i,j)| <= C F_{(2/3)tau(i),3/4} F_{(2/3)tau(j),3/4}") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-7.0, 4.0);
  double c = 0.0;
  std::vector<AntisymMatrix> mats;
  std::vector<std::vector<double>> ptss;
  for (int rep = 0; rep < 25; ++rep) {
    std::vector<double> pts = {u(rng), u(rng), u(rng)};
    mats.push_back(assemble(EvaluationPoints{pts}));
    ptss.push_back(pts);
  }
  auto env_of = [](int row, const std::vector<double>& pts) {
    // 1-based row r over point theta(r) = ceil(r/2), tau(r) = r mod 2
    const int r = row + 1;
    const int theta = (r + 1) / 2 - 1;
    const double tau = r % 2;
    return Envelope{2.0 / 3.0 * tau, 0.75}(pts[theta]);
  };
  for (std::size_t s = 0; s < mats.size(); ++s)
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        if (i != j)
          c = std::max(c, std::fabs(mats[s].at(i, j)) /
                              (env_of(i, ptss[s]) * env_of(j, ptss[s])));
  CHECK(std::isfinite(c));
  CHECK(c < 20.0);
}

TEST_CASE("kernel table matches pointwise entries; serial path identical") {
  const CompositeGrid g = composite_grid(-6.0, 4.0, 24, 5.0);
  const KernelTable t = build_kernel_table(g.nodes);
  const KernelTable ts = build_kernel_table_serial(g.nodes);
  CHECK(t.m == ts.m);
  for (std::size_t p = 0; p < t.k11.size(); ++p) {
    CHECK(t.k11[p] == ts.k11[p]);
    CHECK(t.k12[p] == ts.k12[p]);
    CHECK(t.k22s[p] == ts.k22s[p]);
  }
  for (int i : {0, 5, 17})
    for (int j : {2, 11, 23}) {
      CHECK(std::fabs(t.k11_at(i, j) -
                      k_entry({1, 1}, g.nodes[i], g.nodes[j])) < 1e-9);
      CHECK(std::fabs(t.k12_at(i, j) -
                      k_entry({1, 2}, g.nodes[i], g.nodes[j])) < 1e-9);
      CHECK(std::fabs(t.k22_at(i, j) -
                      k_entry({2, 2}, g.nodes[i], g.nodes[j])) < 1e-9);
    }
}

TEST_CASE("window violations raise") {
  CHECK_THROWS_AS(k_entry({1, 2}, -29.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(assemble(EvaluationPoints{{40.0}}), std::domain_error);
}
