#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "goepf/log_value.hpp"

namespace goepf {

// Dense antisymmetric matrix of even dimension (row-major).
struct AntisymMatrix {
  int dim = 0;
  std::vector<double> a;

  explicit AntisymMatrix(int dim_ = 0)
      : dim(dim_), a(static_cast<std::size_t>(dim_) * dim_, 0.0) {}

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
  double at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * dim + j];
  }

  // Sets (i, j) and (j, i) = -value in one call.
  void set(int i, int j, double value) {
    at(i, j) = value;
    at(j, i) = -value;
  }
};

// Throws unless entries(i,j) = -entries(j,i) within tol and the diagonal is 0.
void validate_antisym(const AntisymMatrix& m, double tol = 1e-10);

// Pfaffian via skew-symmetric elimination with partial pivoting
// (Parlett-Reid style). Validates shape and antisymmetry.
double pfaffian(const AntisymMatrix& m);

// Same algorithm for complex antisymmetric input (row-major, dim x dim).
std::complex<double> pfaffian_complex(std::vector<std::complex<double>> a,
                                      int dim);

// LU with partial pivoting; sign 0 when singular to machine precision.
LogValue determinant(std::vector<double> m, int dim);

struct PathRefineError : std::runtime_error {
  std::size_t index;
  explicit PathRefineError(std::size_t idx)
      : std::runtime_error("sqrt_continued: refine path"), index(idx) {}
};

// Square roots with signs chosen by continuity from the anchor value 1 at
// the start of the path. Throws PathRefineError when a step is ambiguous
// (magnitude jump above the continuity threshold, or a vanishing value
// before the end of the path).
std::vector<LogValue> sqrt_continued(const std::vector<LogValue>& path);

}  // namespace goepf
