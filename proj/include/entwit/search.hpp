#pragma once

// Violating-frame search: the constructive Schmidt frame for pure states and
// a restarted simplex search for the maximal violation
//   F(rho) = max over (U, V) of max(-<W_{U,V}>_rho, 0).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "entwit/core.hpp"
#include "entwit/qstate.hpp"
#include "entwit/witness.hpp"

namespace entwit {

// d^2 real parameters: d diagonal entries, then (re, im) of each upper
// off-diagonal entry (row-major) of a Hermitian generator G.
struct UnitaryParams {
  std::vector<double> values;
};

inline Matrix hermitian_generator(std::span<const double> p, int d) {
  if (static_cast<int>(p.size()) != d * d) {
    throw Error(ErrorCode::kShape, "unitary parameter vector must have d^2 entries");
  }
  Matrix g = Matrix::Zero(d, d);
  std::size_t k = 0;
  for (int i = 0; i < d; ++i) g(i, i) = p[k++];
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      g(i, j) = Complex(p[k], p[k + 1]);
      g(j, i) = Complex(p[k], -p[k + 1]);
      k += 2;
    }
  return g;
}

// U = exp(iG), evaluated through the eigendecomposition of G so the result is
// unitary to working precision for any parameter vector.
inline Matrix param_to_unitary(std::span<const double> p, int d) {
  const Matrix g = hermitian_generator(p, d);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g);
  const RealVector& theta = eig.eigenvalues();
  Vector phases(d);
  for (int k = 0; k < d; ++k) phases(k) = std::polar(1.0, theta(k));
  const Matrix& q = eig.eigenvectors();
  return q * phases.asDiagonal() * q.adjoint();
}

inline Matrix param_to_unitary(const UnitaryParams& p, int d) {
  return param_to_unitary(std::span<const double>(p.values), d);
}

// ---------------------------------------------------------------------------
// Nelder-Mead simplex minimizer

struct SimplexResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
};

// Standard coefficients (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2). Converged when every vertex lies within `tol` (max norm) of
// the best one, or when the function spread drops below tol^2.
template <class Objective>
SimplexResult nelder_mead(Objective&& f, const Eigen::VectorXd& x0, double step, int max_iters,
                          double tol) {
  const Eigen::Index dim = x0.size();
  std::vector<Eigen::VectorXd> pts(dim + 1, x0);
  std::vector<double> vals(dim + 1);
  SimplexResult result;
  for (Eigen::Index i = 0; i < dim; ++i) pts[i + 1](i) += step;
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);
  result.evaluations = static_cast<long>(pts.size());

  std::vector<std::size_t> order(pts.size());
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<Eigen::VectorXd> p2;
    std::vector<double> v2;
    p2.reserve(pts.size());
    v2.reserve(pts.size());
    for (std::size_t i : order) {
      p2.push_back(std::move(pts[i]));
      v2.push_back(vals[i]);
    }
    pts = std::move(p2);
    vals = std::move(v2);
  };

  for (int iter = 0; iter < max_iters; ++iter) {
    sort_simplex();
    double diameter = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      diameter = std::max(diameter, (pts[i] - pts[0]).lpNorm<Eigen::Infinity>());
    if (diameter <= tol || vals.back() - vals.front() <= tol * tol) {
      result.converged = true;
      break;
    }
    result.iterations = iter + 1;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (Eigen::Index i = 0; i < dim; ++i) centroid += pts[i];
    centroid /= static_cast<double>(dim);
    const Eigen::VectorXd& worst = pts.back();

    const Eigen::VectorXd reflected = centroid + (centroid - worst);
    const double fr = f(reflected);
    ++result.evaluations;

    if (fr < vals.front()) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - worst);
      const double fe = f(expanded);
      ++result.evaluations;
      if (fe < fr) {
        pts.back() = expanded;
        vals.back() = fe;
      } else {
        pts.back() = reflected;
        vals.back() = fr;
      }
      continue;
    }
    if (fr < vals[dim - 1]) {
      pts.back() = reflected;
      vals.back() = fr;
      continue;
    }
    const bool outside = fr < vals.back();
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (worst - centroid));
    const double fc = f(contracted);
    ++result.evaluations;
    if (outside ? fc <= fr : fc < vals.back()) {
      pts.back() = contracted;
      vals.back() = fc;
      continue;
    }
    for (std::size_t i = 1; i < pts.size(); ++i) {
      pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
      vals[i] = f(pts[i]);
    }
    result.evaluations += dim;
  }
  sort_simplex();
  result.x = pts.front();
  result.value = vals.front();
  return result;
}

// ---------------------------------------------------------------------------
// Constructive frame for pure entangled states

struct ConstructiveViolation {
  Matrix u;
  Matrix v;
  WitnessEvaluation eval;
  SchmidtForm schmidt;
};

// Schmidt rank 1: no frame can violate the inequality.
struct ProductStateReport {
  SchmidtForm schmidt;
};

using ConstructiveResult = std::variant<ConstructiveViolation, ProductStateReport>;

// The local unitaries of the Schmidt decomposition bring the state to
// sum_i a_i |ii>; in that frame <H> = <P> = 0 while <Q> is proportional to
// a_0 a_1 > 0, so W < 0 whenever the Schmidt rank is at least two.
inline ConstructiveResult constructive_pure_violation(
    const PureState& phi, Normalization norm = Normalization::kTight) {
  SchmidtForm schmidt = schmidt_decompose(phi);
  if (schmidt.rank() < 2) return ProductStateReport{std::move(schmidt)};
  const WitnessEvaluation eval =
      evaluate_witness(phi.projector(), phi.dims(), schmidt.u, schmidt.v, norm);
  return ConstructiveViolation{schmidt.u, schmidt.v, eval, std::move(schmidt)};
}

// ---------------------------------------------------------------------------
// Maximal violation

struct SearchConfig {
  int restarts = 50;
  int max_iters = 500;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  Normalization normalization = Normalization::kTight;
  double initial_step = 0.5;  // simplex edge in generator coordinates
};

// F found by local search is a lower bound on the true maximal violation.
struct ViolationReport {
  double f_value = 0.0;
  Matrix best_u;
  Matrix best_v;
  WitnessEvaluation best_eval;
  int restarts_run = 0;
  long evaluations = 0;
  int converged_restarts = 0;
  int best_restart = 0;
};

namespace detail {

// Dominant eigenvector when rho is pure to within tol::kNorm, else nothing.
inline std::optional<PureState> as_pure(const DensityMatrix& rho) {
  if (std::abs(rho.purity() - 1.0) > tol::kNorm) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.matrix());
  const Eigen::Index top = eig.eigenvalues().size() - 1;
  return PureState::normalized(eig.eigenvectors().col(top), rho.dims());
}

}  // namespace detail

inline ViolationReport max_violation(const DensityMatrix& rho, const SearchConfig& cfg) {
  if (cfg.restarts < 1) throw Error(ErrorCode::kParameter, "restarts must be >= 1");
  if (!(cfg.tol > 0.0)) throw Error(ErrorCode::kParameter, "tol must be positive");

  const int m = rho.dims().m, n = rho.dims().n;
  const FrameEvaluator evaluator(rho.matrix(), rho.dims(), cfg.normalization);

  std::optional<std::pair<Matrix, Matrix>> constructive;
  if (cfg.restarts > 1) {
    if (auto pure = detail::as_pure(rho)) {
      const ConstructiveResult built = constructive_pure_violation(*pure, cfg.normalization);
      if (const auto* hit = std::get_if<ConstructiveViolation>(&built)) {
        constructive = std::make_pair(hit->u, hit->v);
      }
    }
  }

  ViolationReport report;
  bool have_best = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    Matrix base_u, base_v;
    if (r == 0) {
      base_u = Matrix::Identity(m, m);
      base_v = Matrix::Identity(n, n);
    } else if (r == 1 && constructive) {
      base_u = constructive->first;
      base_v = constructive->second;
    } else {
      Rng rng = substream(cfg.seed, static_cast<std::uint64_t>(r));
      base_u = haar_random_unitary(m, rng);
      base_v = haar_random_unitary(n, rng);
    }

    auto frames = [&](const Eigen::VectorXd& x) {
      const std::span<const double> all(x.data(), static_cast<std::size_t>(x.size()));
      return std::make_pair(Matrix(base_u * param_to_unitary(all.first(m * m), m)),
                            Matrix(base_v * param_to_unitary(all.subspan(m * m), n)));
    };
    auto objective = [&](const Eigen::VectorXd& x) {
      const auto [u, v] = frames(x);
      return evaluator.evaluate(u, v).w_val;
    };

    const SimplexResult run = nelder_mead(objective, Eigen::VectorXd::Zero(m * m + n * n),
                                          cfg.initial_step, cfg.max_iters, cfg.tol);
    report.evaluations += run.evaluations;
    report.converged_restarts += run.converged ? 1 : 0;
    report.restarts_run = r + 1;

    if (!have_best || run.value < report.best_eval.w_val) {
      auto [u, v] = frames(run.x);
      report.best_eval = evaluator.evaluate(u, v);
      report.best_u = std::move(u);
      report.best_v = std::move(v);
      report.best_restart = r;
      have_best = true;
    }
  }
  report.f_value = std::max(-report.best_eval.w_val, 0.0);
  return report;
}

}  // namespace entwit
