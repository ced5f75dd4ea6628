#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace entwit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Numerical tolerances shared by every module. Matrices stay at or below
// 256x256, so these are comfortably above accumulated double roundoff.
namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kNorm = 1e-10;
inline constexpr double kPsd = 1e-9;
inline constexpr double kRank = 1e-9;
inline constexpr double kUnitary = 1e-12;
inline constexpr double kReconstruction = 1e-10;
inline constexpr double kViolation = 1e-10;
inline constexpr double kImaginaryResidue = 1e-10;
inline constexpr double kFilter = 1e-12;
}  // namespace tol

enum class ErrorCode {
  kDimension,
  kHermiticity,
  kTrace,
  kPositivity,
  kUnitarity,
  kNormalization,
  kParameter,
  kShape,
  kCapExceeded,
  kFilterAnnihilates,
  kNumeric,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension: return "DIMENSION";
    case ErrorCode::kHermiticity: return "HERMITICITY";
    case ErrorCode::kTrace: return "TRACE";
    case ErrorCode::kPositivity: return "POSITIVITY";
    case ErrorCode::kUnitarity: return "UNITARITY";
    case ErrorCode::kNormalization: return "NORMALIZATION";
    case ErrorCode::kParameter: return "PARAMETER";
    case ErrorCode::kShape: return "SHAPE";
    case ErrorCode::kCapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::kFilterAnnihilates: return "FILTER_ANNIHILATES";
    case ErrorCode::kNumeric: return "NUMERIC";
  }
  return "UNKNOWN";
}

// Every failure raised by the library. `magnitude` carries the offending
// quantity (an eigenvalue, a trace deviation, ...) when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double magnitude = 0.0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        magnitude_(magnitude) {}

  ErrorCode code() const noexcept { return code_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  ErrorCode code_;
  double magnitude_;
};

inline bool is_square(const Matrix& a) { return a.rows() == a.cols(); }

// Largest entrywise modulus of U U^dagger - I.
inline double unitarity_defect(const Matrix& u) {
  if (!is_square(u)) return std::numeric_limits<double>::infinity();
  const Matrix residual = u * u.adjoint() - Matrix::Identity(u.rows(), u.cols());
  return residual.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const Matrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline void require_unitary(const Matrix& u, Eigen::Index side, const char* name) {
  if (u.rows() != side || u.cols() != side) {
    throw Error(ErrorCode::kDimension,
                std::string(name) + " must be " + std::to_string(side) + "x" +
                    std::to_string(side));
  }
  const double defect = unitarity_defect(u);
  if (defect > tol::kUnitary) {
    throw Error(ErrorCode::kUnitarity, std::string(name) + " is not unitary", defect);
  }
}

// Eigenvalues of a Hermitian matrix in ascending order.
inline RealVector hermitian_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

inline double min_eigenvalue(const Matrix& a) { return hermitian_eigenvalues(a)(0); }

}  // namespace entwit
