#pragma once

// Bipartite states and the linear-algebra primitives the witness is built
// on. Basis ordering is |ij> = |i> (x) |j> with the second index fastest,
// i.e. the standard Kronecker layout.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "entwit/core.hpp"

namespace entwit {

struct BipartiteDims {
  int m = 2;
  int n = 2;

  BipartiteDims() = default;
  BipartiteDims(int m_, int n_) : m(m_), n(n_) {
    if (m < 2 || n < 2) {
      throw Error(ErrorCode::kDimension,
                  "subsystem dimensions must be >= 2, got " + std::to_string(m) + "x" +
                      std::to_string(n));
    }
  }

  int total() const { return m * n; }
  BipartiteDims swapped() const { return {n, m}; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

enum class Subsystem { kFirst = 1, kSecond = 2 };

// ---------------------------------------------------------------------------
// Kronecker products

inline Matrix tensor_product(const Matrix& a, const Matrix& b) {
  if (!is_square(a) || !is_square(b)) {
    throw Error(ErrorCode::kDimension, "tensor_product expects square matrices");
  }
  const Eigen::Index ra = a.rows(), rb = b.rows();
  Matrix out(ra * rb, ra * rb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index k = 0; k < ra; ++k) {
      out.block(i * rb, k * rb, rb, rb) = a(i, k) * b;
    }
  }
  return out;
}

inline Vector tensor_product(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// Kronecker product of possibly rectangular operators (local filters).
inline Matrix kron_rect(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    }
  }
  return out;
}

inline Vector basis_ket(int d, int i) {
  Vector v = Vector::Zero(d);
  v(i) = 1.0;
  return v;
}

// ---------------------------------------------------------------------------
// Partial operations on raw matrices laid out with `dims`.

inline void require_layout(const Matrix& rho, const BipartiteDims& dims) {
  if (!is_square(rho) || rho.rows() != dims.total()) {
    throw Error(ErrorCode::kDimension,
                "matrix side " + std::to_string(rho.rows()) + " does not match dims " +
                    std::to_string(dims.m) + "x" + std::to_string(dims.n));
  }
}

inline Matrix partial_trace(const Matrix& rho, const BipartiteDims& dims, Subsystem traced) {
  require_layout(rho, dims);
  const int m = dims.m, n = dims.n;
  if (traced == Subsystem::kSecond) {
    Matrix out = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k)
        for (int j = 0; j < n; ++j) out(i, k) += rho(i * n + j, k * n + j);
    return out;
  }
  Matrix out = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < m; ++i) out(j, l) += rho(i * n + j, i * n + l);
  return out;
}

inline Matrix partial_transpose(const Matrix& rho, const BipartiteDims& dims,
                                Subsystem transposed) {
  require_layout(rho, dims);
  const int m = dims.m, n = dims.n;
  Matrix out(rho.rows(), rho.cols());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < n; ++l) {
          const Complex v = transposed == Subsystem::kFirst ? rho(k * n + j, i * n + l)
                                                            : rho(i * n + l, k * n + j);
          out(i * n + j, k * n + l) = v;
        }
  return out;
}

// ---------------------------------------------------------------------------
// Pure states

class PureState {
 public:
  // Throws NORMALIZATION unless ||amplitudes|| = 1 within tol::kNorm.
  static PureState checked(Vector amplitudes, BipartiteDims dims) {
    if (amplitudes.size() != dims.total()) {
      throw Error(ErrorCode::kDimension, "amplitude vector length does not match dims");
    }
    const double deviation = std::abs(amplitudes.norm() - 1.0);
    if (deviation > tol::kNorm) {
      throw Error(ErrorCode::kNormalization, "pure state is not unit norm", deviation);
    }
    return PureState(std::move(amplitudes), dims);
  }

  static PureState normalized(Vector amplitudes, BipartiteDims dims) {
    const double norm = amplitudes.norm();
    if (norm == 0.0) throw Error(ErrorCode::kNormalization, "zero vector");
    return checked(amplitudes / norm, dims);
  }

  const Vector& amplitudes() const { return amplitudes_; }
  const BipartiteDims& dims() const { return dims_; }
  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

  // Coefficient matrix C with C(i, j) = <ij|psi>.
  Matrix coefficient_matrix() const {
    Matrix c(dims_.m, dims_.n);
    for (int i = 0; i < dims_.m; ++i)
      for (int j = 0; j < dims_.n; ++j) c(i, j) = amplitudes_(i * dims_.n + j);
    return c;
  }

 private:
  PureState(Vector amplitudes, BipartiteDims dims)
      : amplitudes_(std::move(amplitudes)), dims_(dims) {}

  Vector amplitudes_;
  BipartiteDims dims_;
};

inline PureState product_pure(const Vector& a, const Vector& b) {
  return PureState::normalized(tensor_product(a, b),
                               BipartiteDims(static_cast<int>(a.size()), static_cast<int>(b.size())));
}

// ---------------------------------------------------------------------------
// Density matrices

struct Violation {
  ErrorCode code;
  double magnitude;
  std::string detail;
};

struct DensityValidation;

class DensityMatrix {
 public:
  static DensityMatrix from_pure(const PureState& psi) {
    return DensityMatrix(psi.projector(), psi.dims());
  }

  // Validates and throws the first violated invariant.
  static DensityMatrix checked(const Matrix& rho, BipartiteDims dims);

  const Matrix& matrix() const { return rho_; }
  const BipartiteDims& dims() const { return dims_; }
  double purity() const { return (rho_ * rho_).trace().real(); }

 private:
  friend DensityValidation validate_density(const Matrix& rho, BipartiteDims dims);
  DensityMatrix(Matrix rho, BipartiteDims dims) : rho_(std::move(rho)), dims_(dims) {}

  Matrix rho_;
  BipartiteDims dims_;
};

struct DensityValidation {
  std::optional<DensityMatrix> state;  // engaged iff violations is empty
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

inline DensityValidation validate_density(const Matrix& rho, BipartiteDims dims) {
  DensityValidation result;
  if (!is_square(rho) || rho.rows() != dims.total()) {
    result.violations.push_back(
        {ErrorCode::kDimension, static_cast<double>(rho.rows()),
         "matrix is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
             ", dims require side " + std::to_string(dims.total())});
    return result;
  }
  const double herm = hermiticity_defect(rho);
  if (herm > tol::kHermitian) {
    result.violations.push_back({ErrorCode::kHermiticity, herm, "max |rho - rho^dagger|"});
  }
  const double trace_dev = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (trace_dev > tol::kTrace) {
    result.violations.push_back({ErrorCode::kTrace, trace_dev, "|Tr(rho) - 1|"});
  }
  const Matrix hermitian_part = 0.5 * (rho + rho.adjoint());
  const double lowest = min_eigenvalue(hermitian_part);
  if (lowest < -tol::kPsd) {
    result.violations.push_back({ErrorCode::kPositivity, lowest, "minimum eigenvalue"});
  }
  if (result.violations.empty()) result.state = DensityMatrix(hermitian_part, dims);
  return result;
}

inline DensityMatrix DensityMatrix::checked(const Matrix& rho, BipartiteDims dims) {
  DensityValidation v = validate_density(rho, dims);
  if (!v.ok()) {
    const Violation& first = v.violations.front();
    throw Error(first.code, first.detail + " = " + std::to_string(first.magnitude),
                first.magnitude);
  }
  return std::move(*v.state);
}

inline Matrix partial_trace(const DensityMatrix& rho, Subsystem traced) {
  return partial_trace(rho.matrix(), rho.dims(), traced);
}

inline Matrix partial_transpose(const DensityMatrix& rho, Subsystem transposed) {
  return partial_transpose(rho.matrix(), rho.dims(), transposed);
}

// ---------------------------------------------------------------------------
// Schmidt decomposition and pure-state concurrence

struct SchmidtForm {
  RealVector coeffs;  // descending, length min(m, n)
  Matrix u;           // m x m, columns are the first-subsystem Schmidt vectors
  Matrix v;           // n x n, columns are the second-subsystem Schmidt vectors

  int rank(double threshold = tol::kRank) const {
    return static_cast<int>((coeffs.array() > threshold).count());
  }
};

// psi = sum_k coeffs[k] u_k (x) v_k, so (u^dagger (x) v^dagger) psi = sum_k coeffs[k] |kk>.
inline SchmidtForm schmidt_decompose(const PureState& psi) {
  const Matrix c = psi.coefficient_matrix();
  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // C = U S V^dagger, hence psi_ij = sum_k U_ik s_k conj(V_jk).
  return SchmidtForm{svd.singularValues(), svd.matrixU(), svd.matrixV().conjugate()};
}

// C = sqrt(2 (1 - Tr rho_1^2)), computed from the reduced state.
inline double concurrence_pure(const PureState& psi) {
  const Matrix reduced = partial_trace(psi.projector(), psi.dims(), Subsystem::kSecond);
  const double purity = (reduced * reduced).trace().real();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

// ---------------------------------------------------------------------------
// Seeded randomness. Every work item owns a substream derived from
// (seed, index) so results do not depend on execution order.

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng substream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

inline Matrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

// Haar measure via QR of a Ginibre matrix with the phases of diag(R) removed.
inline Matrix haar_random_unitary(int d, Rng& rng) {
  if (d < 1) throw Error(ErrorCode::kDimension, "unitary dimension must be >= 1");
  const Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    q.col(k) *= mag > 0.0 ? diag / mag : Complex(1.0, 0.0);
  }
  return q;
}

inline Vector haar_random_vector(int d, Rng& rng) {
  Vector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

}  // namespace entwit
