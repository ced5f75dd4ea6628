#pragma once

// Local observables, the witness operators H, P, Q and the nonlinear witness
// W = <H>^2 - <P>^2 - <Q>^2. W < 0 certifies entanglement.

#include <array>
#include <cmath>
#include <vector>

#include "entwit/core.hpp"
#include "entwit/qstate.hpp"

namespace entwit {

// lambdas[0] = I, lambdas[i] = |0><0| - |i><i|, mu1 = |0><1| + |1><0|,
// mu2 = i|0><1| - i|1><0|.
struct ObservableBasis {
  int d = 0;
  std::vector<Matrix> lambdas;
  Matrix mu1;
  Matrix mu2;
};

inline ObservableBasis build_base_observables(int d) {
  if (d < 2) throw Error(ErrorCode::kDimension, "observable basis needs d >= 2");
  ObservableBasis basis;
  basis.d = d;
  basis.lambdas.reserve(d);
  basis.lambdas.push_back(Matrix::Identity(d, d));
  for (int i = 1; i < d; ++i) {
    Matrix lambda = Matrix::Zero(d, d);
    lambda(0, 0) = 1.0;
    lambda(i, i) = -1.0;
    basis.lambdas.push_back(std::move(lambda));
  }
  const Complex I(0.0, 1.0);
  basis.mu1 = Matrix::Zero(d, d);
  basis.mu1(0, 1) = 1.0;
  basis.mu1(1, 0) = 1.0;
  basis.mu2 = Matrix::Zero(d, d);
  basis.mu2(0, 1) = I;
  basis.mu2(1, 0) = -I;
  return basis;
}

inline ObservableBasis rotate(const ObservableBasis& basis, const Matrix& u) {
  ObservableBasis out;
  out.d = basis.d;
  out.lambdas.reserve(basis.lambdas.size());
  out.lambdas.push_back(Matrix::Identity(basis.d, basis.d));  // exact, not U I U^dagger
  for (std::size_t i = 1; i < basis.lambdas.size(); ++i)
    out.lambdas.push_back(u * basis.lambdas[i] * u.adjoint());
  out.mu1 = u * basis.mu1 * u.adjoint();
  out.mu2 = u * basis.mu2 * u.adjoint();
  return out;
}

struct RotatedObservables {
  ObservableBasis basis_a;  // A_i = U lambda_i U^dagger, A'_j = U mu_j U^dagger
  ObservableBasis basis_b;  // B_i, B'_j likewise with V
  Matrix u;
  Matrix v;
};

inline RotatedObservables rotate_observables(const BipartiteDims& dims, const Matrix& u,
                                             const Matrix& v) {
  require_unitary(u, dims.m, "U");
  require_unitary(v, dims.n, "V");
  return {rotate(build_base_observables(dims.m), u), rotate(build_base_observables(dims.n), v),
          u, v};
}

// Overall scale of P and Q relative to H.
//
// kLiteral uses the prefactors 1/(2 m^2 n^2) for P and 1/16 for Q.
// kTight uses 1/(2 m n) and 1/4; product states supported on {0,1}x{0,1}
// then saturate <H>^2 = <P>^2 + <Q>^2. H is the same under both.
enum class Normalization { kTight, kLiteral };

inline const char* to_string(Normalization n) {
  return n == Normalization::kTight ? "tight" : "literal";
}

struct NormalizationScale {
  double p;  // prefactor of sum (m d_i1 - n d_j1) A_i (x) B_j
  double q;  // prefactor of A'_1 (x) B'_1 - A'_2 (x) B'_2
};

inline NormalizationScale scale_of(Normalization norm, const BipartiteDims& dims) {
  const double mn = static_cast<double>(dims.m) * dims.n;
  if (norm == Normalization::kLiteral) return {1.0 / (2.0 * mn * mn), 1.0 / 16.0};
  return {1.0 / (2.0 * mn), 0.25};
}

struct WitnessOperators {
  Matrix h;
  Matrix p;
  Matrix q;
};

inline WitnessOperators build_hpq(const BipartiteDims& dims, const Matrix& u, const Matrix& v,
                                  Normalization norm = Normalization::kTight) {
  const RotatedObservables obs = rotate_observables(dims, u, v);
  const int m = dims.m, n = dims.n;
  const NormalizationScale scale = scale_of(norm, dims);
  const Eigen::Index side = dims.total();

  WitnessOperators ops{Matrix::Zero(side, side), Matrix::Zero(side, side),
                       Matrix::Zero(side, side)};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double di = i == 1 ? 1.0 : 0.0;
      const double dj = j == 1 ? 1.0 : 0.0;
      const double ch = 1.0 - 0.5 * m * di - 0.5 * n * dj;
      const double cp = m * di - n * dj;
      if (ch == 0.0 && cp == 0.0) continue;
      const Matrix term = tensor_product(obs.basis_a.lambdas[i], obs.basis_b.lambdas[j]);
      if (ch != 0.0) ops.h += ch * term;
      if (cp != 0.0) ops.p += cp * term;
    }
  }
  ops.h /= static_cast<double>(m) * n;
  ops.p *= scale.p;
  ops.q = scale.q * (tensor_product(obs.basis_a.mu1, obs.basis_b.mu1) -
                     tensor_product(obs.basis_a.mu2, obs.basis_b.mu2));
  return ops;
}

struct WitnessEvaluation {
  double h_val = 0.0;
  double p_val = 0.0;
  double q_val = 0.0;
  double w_val = 0.0;
  bool violated = false;

  static WitnessEvaluation from_expectations(double h, double p, double q) {
    WitnessEvaluation e{h, p, q, h * h - p * p - q * q, false};
    e.violated = e.w_val < -tol::kViolation;
    return e;
  }
};

inline double real_expectation(const Matrix& rho, const Matrix& op) {
  // Tr(rho op) without forming the product.
  const Complex value = (rho.transpose().cwiseProduct(op)).sum();
  if (std::abs(value.imag()) > tol::kImaginaryResidue) {
    throw Error(ErrorCode::kNumeric, "expectation of a Hermitian operator has imaginary part",
                value.imag());
  }
  return value.real();
}

// Matrix route: builds H, P, Q in the frame (U, V) and takes Tr(rho X).
// Accepts any Hermitian operator of the right size so the filtered
// Example-4 operator can be probed even when it is not a state.
inline WitnessEvaluation evaluate_witness(const Matrix& rho, const BipartiteDims& dims,
                                          const Matrix& u, const Matrix& v,
                                          Normalization norm = Normalization::kTight) {
  require_layout(rho, dims);
  const WitnessOperators ops = build_hpq(dims, u, v, norm);
  return WitnessEvaluation::from_expectations(real_expectation(rho, ops.h),
                                              real_expectation(rho, ops.p),
                                              real_expectation(rho, ops.q));
}

inline WitnessEvaluation evaluate_witness(const DensityMatrix& rho, const Matrix& u,
                                          const Matrix& v,
                                          Normalization norm = Normalization::kTight) {
  return evaluate_witness(rho.matrix(), rho.dims(), u, v, norm);
}

inline WitnessEvaluation evaluate_witness_identity(const DensityMatrix& rho,
                                                   Normalization norm = Normalization::kTight) {
  return evaluate_witness(rho, Matrix::Identity(rho.dims().m, rho.dims().m),
                          Matrix::Identity(rho.dims().n, rho.dims().n), norm);
}

// Frame route used inside optimization loops. In the identity frame
//   H = (|01><01| + |10><10|) / 2
//   P = c_p (|01><01| - |10><10|)
//   Q = c_q (|00><11| + |11><00|)
// so in frame (U, V) only the first two columns of U and V matter.
class FrameEvaluator {
 public:
  FrameEvaluator(const Matrix& rho, const BipartiteDims& dims,
                 Normalization norm = Normalization::kTight)
      : rho_(rho), dims_(dims) {
    require_layout(rho, dims);
    const double mn = static_cast<double>(dims.m) * dims.n;
    const NormalizationScale scale = scale_of(norm, dims);
    diag_p_ = scale.p * mn;
    offdiag_q_ = 4.0 * scale.q;  // Tr(rho Q) = 2 c_q Re<11|rho|00>, c_q = 2 scale.q
  }

  WitnessEvaluation evaluate(const Matrix& u, const Matrix& v) const {
    const Vector w00 = tensor_product(Vector(u.col(0)), Vector(v.col(0)));
    const Vector w01 = tensor_product(Vector(u.col(0)), Vector(v.col(1)));
    const Vector w10 = tensor_product(Vector(u.col(1)), Vector(v.col(0)));
    const Vector w11 = tensor_product(Vector(u.col(1)), Vector(v.col(1)));
    const double r01 = w01.dot(rho_ * w01).real();
    const double r10 = w10.dot(rho_ * w10).real();
    const Complex c = w11.dot(rho_ * w00);  // <w11|rho|w00>
    return WitnessEvaluation::from_expectations(0.5 * (r01 + r10), diag_p_ * (r01 - r10),
                                                offdiag_q_ * c.real());
  }

  const BipartiteDims& dims() const { return dims_; }

 private:
  Matrix rho_;
  BipartiteDims dims_;
  double diag_p_ = 0.0;
  double offdiag_q_ = 0.0;
};

// Closed forms for a pure product state a (x) b in the identity frame:
//   <H> = (|a0 b1|^2 + |a1 b0|^2) / 2
//   <P>^2 + <Q>^2 = (|a0 b1|^2 - |a1 b0|^2)^2 / 4 + Re(a0 a1* b0 b1*)^2
struct PureProductForm {
  double h_val;
  double pq_sq;
};

inline PureProductForm pure_product_closed_form(const Vector& a, const Vector& b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorCode::kDimension, "local vectors need length >= 2");
  }
  for (const Vector* x : {&a, &b}) {
    const double deviation = std::abs(x->norm() - 1.0);
    if (deviation > tol::kNorm) {
      throw Error(ErrorCode::kNormalization, "local vector is not unit norm", deviation);
    }
  }
  const double x01 = std::norm(a(0) * b(1));
  const double x10 = std::norm(a(1) * b(0));
  const double re = (a(0) * std::conj(a(1)) * b(0) * std::conj(b(1))).real();
  return {0.5 * (x01 + x10), 0.25 * (x01 - x10) * (x01 - x10) + re * re};
}

// The 3x3 inequality used for the Horodecki family, implemented term by term:
//   lhs = 4 <M>^2
//   rhs = 36 <I(x)l1 - l1(x)I - l1(x)l2 + l2(x)l1>^2 + 81 <mu1(x)mu1 - mu2(x)mu2>^2
// The mu2 (x) mu2 term carries a minus sign, matching Q.
struct Eq8Sides {
  double lhs;
  double rhs;

  bool violated() const { return lhs < rhs - tol::kViolation; }
};

inline Eq8Sides horodecki_eq8_sides(const Matrix& rho, const BipartiteDims& dims) {
  if (dims.m != 3 || dims.n != 3) {
    throw Error(ErrorCode::kDimension, "the 3x3 inequality needs dims (3, 3)");
  }
  require_layout(rho, dims);
  const ObservableBasis b = build_base_observables(3);
  const Matrix& id = b.lambdas[0];
  const Matrix& l1 = b.lambdas[1];
  const Matrix& l2 = b.lambdas[2];
  auto k = [](const Matrix& x, const Matrix& y) { return tensor_product(x, y); };

  const Matrix m_op = 2.0 * k(id, id) - k(id, l1) + 2.0 * k(id, l2) - k(l1, id) -
                      4.0 * k(l1, l1) - k(l1, l2) + 2.0 * k(l2, id) - k(l2, l1) +
                      2.0 * k(l2, l2);
  const Matrix n_op = k(id, l1) - k(l1, id) - k(l1, l2) + k(l2, l1);
  const Matrix mu_op = k(b.mu1, b.mu1) - k(b.mu2, b.mu2);

  const double em = real_expectation(rho, m_op);
  const double en = real_expectation(rho, n_op);
  const double emu = real_expectation(rho, mu_op);
  return {4.0 * em * em, 36.0 * en * en + 81.0 * emu * emu};
}

inline Eq8Sides horodecki_eq8_sides(const DensityMatrix& rho) {
  return horodecki_eq8_sides(rho.matrix(), rho.dims());
}

}  // namespace entwit
