#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "goepf/audit.hpp"

using namespace goepf;

namespace {

void check_suite_clean(const AuditReport& rep) {
  CHECK(!rep.checks.empty());
  for (const AuditCheck& c : rep.checks) {
    INFO("check ", c.name);
    CHECK(c.finite);
    CHECK(std::isfinite(c.fitted_c));
    CHECK(c.violations == 0);
    CHECK(c.drift <= 0.05);
  }
}

}  // namespace

TEST_CASE("unknown suite raises") {
  CHECK_THROWS_AS(audit_bounds("nope"), std::invalid_argument);
  CHECK(audit_suites().size() == 7);
}

TEST_CASE("k12 suite") {
  const AuditReport rep = audit_bounds("k12");
  check_suite_clean(rep);
  // rho1 >= -1e-10 on the sampled grid
  bool found = false;
  for (const AuditCheck& c : rep.checks)
    if (c.name == "rho1_nonneg") {
      found = true;
      CHECK(c.fitted_c >= -1e-10);
    }
  CHECK(found);
}

TEST_CASE("kernel suite") { check_suite_clean(audit_bounds("kernel")); }

TEST_CASE("pf suite") { check_suite_clean(audit_bounds("pf")); }

TEST_CASE("phi suite") {
  const AuditReport rep = audit_bounds("phi");
  check_suite_clean(rep);
  // the k = 0 bound carries no constant: the fitted value stays near 1
  for (const AuditCheck& c : rep.checks)
    if (c.name == "phi_0_env") CHECK(c.fitted_c <= 1.0 + 1e-9);
}

TEST_CASE("laplace_profiles suite") {
  const AuditReport rep = audit_bounds("laplace_profiles");
  check_suite_clean(rep);
  for (const AuditCheck& c : rep.checks)
    if (c.name == "beta_identity") CHECK(c.fitted_c <= 1e-8);
}

TEST_CASE("integration suite") {
  check_suite_clean(audit_bounds("integration"));
}

TEST_CASE("bpl suite") { check_suite_clean(audit_bounds("bpl")); }
