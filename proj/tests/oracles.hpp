#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's operator builders; index arithmetic is spelled out by hand.

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "entwit/core.hpp"

namespace oracle {

using entwit::Complex;
using entwit::Matrix;
using entwit::Vector;

inline Matrix pauli_x() {
  Matrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

inline Matrix pauli_y() {
  Matrix s(2, 2);
  s << 0, Complex(0, -1), Complex(0, 1), 0;
  return s;
}

inline Matrix pauli_z() {
  Matrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

// Kronecker product written out element by element.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index k = 0; k < b.size(); ++k) out(i * b.size() + k) = a(i) * b(k);
  return out;
}

// <ij|rho^{T_A}|kl> = <kj|rho|il>
inline Matrix transpose_first(const Matrix& rho, int m, int n) {
  Matrix out(m * n, m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < n; ++l) out(i * n + j, k * n + l) = rho(k * n + j, i * n + l);
  return out;
}

inline Matrix trace_second(const Matrix& rho, int m, int n) {
  Matrix out = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < n; ++j) out(i, k) += rho(i * n + j, k * n + j);
  return out;
}

inline double lowest_eigenvalue(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// The witness operators depend on the frames only through the first two
// columns u0, u1 of U and v0, v1 of V:
//   H = (|u0 v1><u0 v1| + |u1 v0><u1 v0|) / 2
//   P = cp (|u0 v1><u0 v1| - |u1 v0><u1 v0|)
//   Q = cq (|u0 v0><u1 v1| + |u1 v1><u0 v0|)
// with (cp, cq) = (1/2, 1/2) tight and (1/(2mn), 1/8) literal.
struct Hpq {
  Matrix h, p, q;
};

inline Hpq compressed_hpq(const Matrix& u, const Matrix& v, bool literal) {
  const int m = static_cast<int>(u.rows()), n = static_cast<int>(v.rows());
  const Vector a = kron(Vector(u.col(0)), Vector(v.col(1)));
  const Vector b = kron(Vector(u.col(1)), Vector(v.col(0)));
  const Vector c = kron(Vector(u.col(0)), Vector(v.col(0)));
  const Vector d = kron(Vector(u.col(1)), Vector(v.col(1)));
  const double cp = literal ? 1.0 / (2.0 * m * n) : 0.5;
  const double cq = literal ? 0.125 : 0.5;
  const Matrix pa = a * a.adjoint(), pb = b * b.adjoint();
  return {(pa + pb) / 2.0, cp * (pa - pb), cq * (c * d.adjoint() + d * c.adjoint())};
}

struct Values {
  double h, p, q, w;
};

inline Values expect(const Matrix& rho, const Hpq& ops) {
  const double h = (rho * ops.h).trace().real();
  const double p = (rho * ops.p).trace().real();
  const double q = (rho * ops.q).trace().real();
  return {h, p, q, h * h - p * p - q * q};
}

// Violation -<W> of the Werner family in the swap frame, tight scaling.
inline double werner_violation(int n, double f) {
  const double a = (n * f - 1.0) / (n * n * n - n);
  const double b = (f + 1.0) / (n * (n + 1.0));
  return a * a - b * b;
}

inline double isotropic_h(int n, double f) { return (1.0 - f) / (n * n - 1.0); }

// literal scaling, identity frame
inline double isotropic_q(int n, double f) {
  return (n * n * f - 1.0) / (4.0 * n * (n * n - 1.0));
}

}  // namespace oracle
