#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "goepf/antisym.hpp"

using namespace goepf;

namespace {

AntisymMatrix random_antisym(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  AntisymMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) m.set(i, j, u(rng));
  return m;
}

}  // namespace

TEST_CASE("pfaffian closed forms") {
  AntisymMatrix m2(2);
  m2.set(0, 1, 3.7);
  CHECK(pfaffian(m2) == doctest::Approx(3.7).epsilon(1e-14));

  AntisymMatrix m4(4);
  m4.set(0, 1, 1.0);
  m4.set(0, 2, 2.0);
  m4.set(0, 3, 3.0);
  m4.set(1, 2, 4.0);
  m4.set(1, 3, 5.0);
  m4.set(2, 3, 6.0);
  // a01 a23 - a02 a13 + a03 a12 = 6 - 10 + 12 = 8
  CHECK(pfaffian(m4) == doctest::Approx(8.0).epsilon(1e-13));
}

TEST_CASE("pfaffian validation") {
  AntisymMatrix odd(3);
  CHECK_THROWS_AS(pfaffian(odd), std::invalid_argument);
  AntisymMatrix bad(2);
  bad.at(0, 1) = 1.0;
  bad.at(1, 0) = -0.5;
  CHECK_THROWS_AS(pfaffian(bad), std::invalid_argument);
}

TEST_CASE("Pf(A)^2 = det(A) on random matrices") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const int dim = 2 * (1 + static_cast<int>(rng() % 5));  // 2..10
    const AntisymMatrix m = random_antisym(dim, rng);
    const double pf = pfaffian(m);
    const LogValue det = determinant(m.a, dim);
    CHECK(det.sign == 1);
    CHECK(std::fabs(2.0 * std::log(std::fabs(pf)) - det.log_mag) < 1e-10);
  }
}

TEST_CASE("Pf(B^T A B) = det(B) Pf(A)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const int dim = 6;
    const AntisymMatrix a = random_antisym(dim, rng);
    std::vector<double> b(dim * dim);
    for (double& v : b) v = u(rng);
    AntisymMatrix c(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) {
        double s = 0.0;
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l)
            s += b[k * dim + i] * a.at(k, l) * b[l * dim + j];
        c.set(i, j, s);
      }
    const LogValue detb = determinant(b, dim);
    const double lhs = pfaffian(c);
    const double rhs = detb.value() * pfaffian(a);
    CHECK(std::fabs(lhs - rhs) <= 1e-8 * std::max(1.0, std::fabs(rhs)));
  }
}

TEST_CASE("Pf of a direct sum is the product of Pfaffians") {
  std::mt19937_64 rng(13);
  const AntisymMatrix a = random_antisym(4, rng);
  const AntisymMatrix b = random_antisym(6, rng);
  AntisymMatrix sum(10);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) sum.set(i, j, a.at(i, j));
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) sum.set(4 + i, 4 + j, b.at(i, j));
  CHECK(std::fabs(pfaffian(sum) - pfaffian(a) * pfaffian(b)) < 1e-10);
}

TEST_CASE("complex pfaffian squares to the determinant") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int dim = 6;
  std::vector<std::complex<double>> a(dim * dim, 0.0);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const std::complex<double> v(u(rng), u(rng));
      a[i * dim + j] = v;
      a[j * dim + i] = -v;
    }
  const std::complex<double> pf = pfaffian_complex(a, dim);
  std::vector<std::complex<double>> m = a;
  std::complex<double> det = 1.0;
  for (int k = 0; k < dim; ++k) {
    int piv = k;
    for (int i = k + 1; i < dim; ++i)
      if (std::abs(m[i * dim + k]) > std::abs(m[piv * dim + k])) piv = i;
    if (piv != k) {
      for (int j = 0; j < dim; ++j) std::swap(m[k * dim + j], m[piv * dim + j]);
      det = -det;
    }
    det *= m[k * dim + k];
    for (int i = k + 1; i < dim; ++i) {
      const std::complex<double> f = m[i * dim + k] / m[k * dim + k];
      for (int j = k; j < dim; ++j) m[i * dim + j] -= f * m[k * dim + j];
    }
  }
  CHECK(std::abs(pf * pf - det) < 1e-10 * std::abs(det));
}

TEST_CASE("determinant basics") {
  std::vector<double> eye(36, 0.0);
  for (int i = 0; i < 6; ++i) eye[i * 6 + i] = 1.0;
  const LogValue d = determinant(eye, 6);
  CHECK(d.sign == 1);
  CHECK(std::fabs(d.log_mag) < 1e-14);

  const std::vector<double> diag = {2.0, 0.0, 0.0, 3.0};
  const LogValue d2 = determinant(diag, 2);
  CHECK(d2.sign == 1);
  CHECK(d2.log_mag == doctest::Approx(std::log(6.0)).epsilon(1e-14));

  const std::vector<double> rank1 = {1.0, 2.0, 2.0, 4.0};
  CHECK(determinant(rank1, 2).sign == 0);
}

TEST_CASE("sqrt_continued") {
  auto lv = [](double v) { return LogValue::from_double(v); };
  const std::vector<LogValue> p1 = {lv(1.0), lv(4.0)};
  const auto r1 = sqrt_continued(p1);
  CHECK(r1.back().value() == doctest::Approx(2.0).epsilon(1e-14));

  const std::vector<LogValue> p2 = {lv(1.0), lv(0.25), lv(0.01)};
  const auto r2 = sqrt_continued(p2);
  CHECK(r2[1].value() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r2[2].value() == doctest::Approx(0.1).epsilon(1e-14));

  const std::vector<LogValue> p3 = {lv(1.0), lv(1e-30), lv(0.9)};
  CHECK_THROWS_AS(sqrt_continued(p3), PathRefineError);

  const std::vector<LogValue> bad_anchor = {lv(2.0), lv(4.0)};
  CHECK_THROWS_AS(sqrt_continued(bad_anchor), std::invalid_argument);
}
