#pragma once

// Reference criteria used as oracles: PPT and the reduction criterion.

#include <algorithm>

#include "entwit/core.hpp"
#include "entwit/qstate.hpp"

namespace entwit {

struct PptResult {
  double min_eigenvalue = 0.0;  // smallest eigenvalue of the partial transpose
  bool is_npt = false;
};

inline PptResult ppt_check(const Matrix& rho, const BipartiteDims& dims,
                           Subsystem side = Subsystem::kFirst) {
  const double lowest = min_eigenvalue(partial_transpose(rho, dims, side));
  return {lowest, lowest < -tol::kPsd};
}

inline PptResult ppt_check(const DensityMatrix& rho, Subsystem side = Subsystem::kFirst) {
  return ppt_check(rho.matrix(), rho.dims(), side);
}

struct ReductionResult {
  double min_eig_a = 0.0;  // lowest eigenvalue of rho_A (x) I - rho
  double min_eig_b = 0.0;  // lowest eigenvalue of I (x) rho_B - rho
  bool violated = false;
};

inline ReductionResult reduction_check(const Matrix& rho, const BipartiteDims& dims) {
  const Matrix rho_a = partial_trace(rho, dims, Subsystem::kSecond);
  const Matrix rho_b = partial_trace(rho, dims, Subsystem::kFirst);
  const double a = min_eigenvalue(tensor_product(rho_a, Matrix::Identity(dims.n, dims.n)) - rho);
  const double b = min_eigenvalue(tensor_product(Matrix::Identity(dims.m, dims.m), rho_b) - rho);
  return {a, b, std::min(a, b) < -tol::kPsd};
}

inline ReductionResult reduction_check(const DensityMatrix& rho) {
  return reduction_check(rho.matrix(), rho.dims());
}

}  // namespace entwit
