#pragma once

#include <vector>

#include "goepf/antisym.hpp"
#include "goepf/log_value.hpp"

namespace goepf {

// Decay envelope F_{alpha,beta}: e^{-alpha x^{3/2}} for x >= 0 and
// (1 - x)^beta for x < 0.
struct Envelope {
  double alpha = 0.0;
  double beta = 0.0;
  double operator()(double x) const;
};

// Selects the 2x2 matrix-kernel entry; kinds are 1 or 2.
struct KernelEntrySelector {
  int row_kind = 1;
  int col_kind = 2;
};

enum class KernelFormula { primary, alternate };

// Arguments are restricted to [-28, 28] so that every shifted Airy
// evaluation stays in the special-function accuracy range.
constexpr double kKernelWindow = 28.0;

// Matrix-kernel entry at (x, y). The alternate formula uses the
// integration-by-parts form of K11 and the Fubini-reduced form of K22;
// K12/K21 have a single formula.
double k_entry(KernelEntrySelector sel, double x, double y,
               KernelFormula formula = KernelFormula::primary);

// Diagonal (1,2)-entry: the one-point correlation function.
double k12_diag(double x);

// Log-domain diagonal entry for x >= 0; representable down to e^{-inf}.
LogValue k12_diag_log(double x);

struct EvaluationPoints {
  std::vector<double> points;
};

// The 2L x 2L block matrix D with D(2i-1,2j-1) = K11(x_i, x_j),
// D(2i-1,2j) = K12, D(2i,2j-1) = K21, D(2i,2j) = K22 (1-based blocks).
AntisymMatrix assemble(const EvaluationPoints& pts);

// rho_L(x_1..x_L) = Pf of the assembled matrix.
double correlation(const EvaluationPoints& pts);

// Kernel entries tabulated on a fixed node set with one shared
// lambda-grid and per-point Airy caches. k22s excludes the -sgn(x-y)/4
// term, which is carried separately so the quadrature of the jump can be
// corrected downstream.
struct KernelTable {
  std::vector<double> x;
  int m = 0;
  std::vector<double> k11;   // m*m, row-major
  std::vector<double> k12;   // m*m
  std::vector<double> k22s;  // m*m, smooth part only

  double k11_at(int i, int j) const { return k11[idx(i, j)]; }
  double k12_at(int i, int j) const { return k12[idx(i, j)]; }
  double k21_at(int i, int j) const { return -k12[idx(j, i)]; }
  double k22s_at(int i, int j) const { return k22s[idx(i, j)]; }
  double k22_at(int i, int j) const {
    const double s = x[i] > x[j] ? 1.0 : (x[i] < x[j] ? -1.0 : 0.0);
    return k22s[idx(i, j)] - 0.25 * s;
  }
  double k12_diag_at(int i) const { return k12[idx(i, i)]; }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * m + j;
  }
};

KernelTable build_kernel_table(const std::vector<double>& nodes);
// Reference implementation without threaded loops; must produce entries
// bit-identical to build_kernel_table.
KernelTable build_kernel_table_serial(const std::vector<double>& nodes);

}  // namespace goepf
