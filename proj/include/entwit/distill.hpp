#pragma once

// Distillability evidence: N-fold copies, local filtering onto small
// subspaces, and witness checks on the filtered state.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "entwit/core.hpp"
#include "entwit/criteria.hpp"
#include "entwit/qstate.hpp"
#include "entwit/search.hpp"
#include "entwit/witness.hpp"
#include "entwit/zoo.hpp"

namespace entwit {

inline constexpr int kMaxCopies = 2;
inline constexpr int kMaxCopyDimension = 256;

// rho^{(x)N} with all first-subsystem factors ahead of the second-subsystem
// ones, so the result is again bipartite with dims (m^N, n^N).
inline DensityMatrix n_fold_copy(const DensityMatrix& rho, int n_copies) {
  if (n_copies < 1 || n_copies > kMaxCopies) {
    throw Error(ErrorCode::kCapExceeded, "copies must be 1 or 2", n_copies);
  }
  if (n_copies == 1) return rho;
  const int m = rho.dims().m, n = rho.dims().n;
  const int side = m * n * m * n;
  if (side > kMaxCopyDimension) {
    throw Error(ErrorCode::kCapExceeded, "two-copy dimension exceeds 256", side);
  }
  const Matrix doubled = tensor_product(rho.matrix(), rho.matrix());  // A1 B1 A2 B2
  std::vector<int> source(side);
  for (int a1 = 0; a1 < m; ++a1)
    for (int a2 = 0; a2 < m; ++a2)
      for (int b1 = 0; b1 < n; ++b1)
        for (int b2 = 0; b2 < n; ++b2)
          source[((a1 * m + a2) * n + b1) * n + b2] = ((a1 * n + b1) * m + a2) * n + b2;
  Matrix out(side, side);
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) out(r, c) = doubled(source[r], source[c]);
  return DensityMatrix::checked(out, BipartiteDims(m * m, n * n));
}

// Local operators A (target_m x m) and B (target_n x n). They need not be
// projectors.
struct FilterPair {
  Matrix a;
  Matrix b;
};

struct FilteredOperator {
  Matrix rho;           // (A (x) B) rho (A (x) B)^dagger / trace
  double trace = 0.0;   // trace before renormalization
};

inline FilteredOperator filter_operator(const Matrix& rho, const BipartiteDims& dims,
                                        const FilterPair& f, const BipartiteDims& out_dims) {
  require_layout(rho, dims);
  if (f.a.cols() != dims.m || f.b.cols() != dims.n || f.a.rows() != out_dims.m ||
      f.b.rows() != out_dims.n) {
    throw Error(ErrorCode::kShape, "filter shapes do not match source and target dims");
  }
  const Matrix k = kron_rect(f.a, f.b);
  const Matrix sigma = k * rho * k.adjoint();
  const double t = sigma.trace().real();
  if (!(t > tol::kFilter)) {
    throw Error(ErrorCode::kFilterAnnihilates, "filtered trace vanishes", t);
  }
  return {sigma / t, t};
}

inline DensityMatrix apply_filter(const DensityMatrix& rho, const FilterPair& f,
                                  const BipartiteDims& out_dims) {
  return DensityMatrix::checked(filter_operator(rho.matrix(), rho.dims(), f, out_dims).rho,
                                out_dims);
}

// ---------------------------------------------------------------------------
// The 4x4 example: A = |0><0| + |1><1| onto 2 dims, B = (|0>+|1>)(<0|+<1|) +
// |2><2| onto 3 dims, witness frame U = I_2 and
// V = |1><2| + (|0>(<0|+<1|) + |2>(<0|-<1|)) / sqrt(2).

inline FilterPair example4_filters() {
  Matrix a = Matrix::Zero(2, 4);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;
  Matrix b = Matrix::Zero(3, 4);
  b(0, 0) = b(0, 1) = b(1, 0) = b(1, 1) = 1.0;
  b(2, 2) = 1.0;
  return {a, b};
}

inline std::pair<Matrix, Matrix> example4_frame() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix v = Matrix::Zero(3, 3);
  v(1, 2) = 1.0;
  v(0, 0) = s;
  v(0, 1) = s;
  v(2, 0) = s;
  v(2, 1) = -s;
  return {Matrix::Identity(2, 2), v};
}

struct Example4Report {
  double p = 0.0;
  double state_min_eigenvalue = 0.0;
  bool state_valid = false;
  Matrix projected;  // filtered, renormalized 2x3 operator
  double projected_min_eigenvalue = 0.0;
  bool projected_valid = false;
  WitnessEvaluation eval;
  PptResult projected_ppt;
  ReductionResult reduction;  // on the unfiltered 4x4 operator
  bool distillable_evidence = false;
};

// Runs on the transcribed operator even when it is not positive, so every
// ingredient of the claim can be inspected. Evidence requires a valid
// filtered state and a witness violation.
inline Example4Report example4_check(double p, Normalization norm = Normalization::kTight) {
  const BipartiteDims source(4, 4), target(2, 3);
  const Matrix rho = example4_operator(p);
  Example4Report r;
  r.p = p;
  r.state_min_eigenvalue = min_eigenvalue(rho);
  r.state_valid = validate_density(rho, source).ok();
  r.projected = filter_operator(rho, source, example4_filters(), target).rho;
  r.projected_min_eigenvalue = min_eigenvalue(r.projected);
  r.projected_valid = validate_density(r.projected, target).ok();
  const auto [u, v] = example4_frame();
  r.eval = evaluate_witness(r.projected, target, u, v, norm);
  r.projected_ppt = ppt_check(r.projected, target);
  r.reduction = reduction_check(rho, source);
  r.distillable_evidence = r.projected_valid && r.eval.violated;
  return r;
}

// ---------------------------------------------------------------------------
// Heuristic filter search

struct DistillReport {
  int n_copies = 1;
  FilterPair filter;
  std::optional<DensityMatrix> projected_state;  // 2x2
  ViolationReport search;
  bool distillable_evidence = false;  // "no evidence at this budget" when false
  int filters_tried = 0;
  int best_filter = -1;
};

// Rows of a random 2 x d isometry: the conjugate transpose of the first two
// columns of a Haar unitary.
inline Matrix random_qubit_filter(int d, Rng& rng) {
  return haar_random_unitary(d, rng).leftCols(2).adjoint();
}

// Sample 0 projects both sides onto span{|0>, |1>}; the rest are Haar
// isometries drawn from per-sample substreams.
inline DistillReport distill_search(const DensityMatrix& rho, int n_copies,
                                    const SearchConfig& cfg, int filter_samples = 16) {
  const DensityMatrix copies = n_fold_copy(rho, n_copies);
  const int dm = copies.dims().m, dn = copies.dims().n;
  const BipartiteDims qubits(2, 2);

  DistillReport best;
  best.n_copies = n_copies;
  for (int s = 0; s < filter_samples; ++s) {
    FilterPair filter;
    if (s == 0) {
      filter = {Matrix::Identity(2, dm), Matrix::Identity(2, dn)};
    } else {
      Rng rng = substream(cfg.seed ^ 0xd1b54a32d192ed03ULL, static_cast<std::uint64_t>(s));
      filter = {random_qubit_filter(dm, rng), random_qubit_filter(dn, rng)};
    }
    ++best.filters_tried;
    std::optional<DensityMatrix> projected;
    try {
      projected = apply_filter(copies, filter, qubits);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kFilterAnnihilates) continue;
      throw;
    }
    SearchConfig sub = cfg;
    sub.seed = splitmix64(cfg.seed + static_cast<std::uint64_t>(s));
    ViolationReport found = max_violation(*projected, sub);
    if (best.best_filter < 0 || found.best_eval.w_val < best.search.best_eval.w_val) {
      best.filter = std::move(filter);
      best.projected_state = std::move(projected);
      best.search = std::move(found);
      best.best_filter = s;
    }
  }
  best.distillable_evidence = best.best_filter >= 0 && best.search.best_eval.violated;
  return best;
}

}  // namespace entwit
