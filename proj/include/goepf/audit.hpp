#pragma once

#include <string>
#include <vector>

namespace goepf {

// One fitted inequality: fitted_c is the smallest constant making the bound
// hold on the base grid, refined_c the same on a grid of doubled density,
// and violations counts refined-grid points that exceed 1.05 * fitted_c.
// Identity-style checks (residual tests) report the max residual as
// fitted_c and count points above the advertised tolerance.
struct AuditCheck {
  std::string name;
  double fitted_c = 0.0;
  double refined_c = 0.0;
  double drift = 0.0;  // |refined_c / fitted_c - 1|
  long violations = 0;
  bool finite = true;
};

struct AuditReport {
  std::string suite;
  std::vector<AuditCheck> checks;
};

// Suites: "k12", "kernel", "pf", "phi", "laplace_profiles", "integration",
// "bpl". density scales the base grid (the refined grid is 2 x density).
AuditReport audit_bounds(const std::string& suite, int density = 1);

std::vector<std::string> audit_suites();

}  // namespace goepf
