#pragma once

// Named state families and random ensembles for property tests.

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <initializer_list>
#include <utility>
#include <vector>

#include "entwit/core.hpp"
#include "entwit/qstate.hpp"

namespace entwit {

namespace detail {
using Pairs = std::initializer_list<std::pair<int, int>>;
}  // namespace detail

inline PureState max_entangled(int n) {
  Vector psi = Vector::Zero(n * n);
  for (int i = 0; i < n; ++i) psi(i * n + i) = 1.0;
  return PureState::normalized(std::move(psi), BipartiteDims(n, n));
}

inline PureState product_state(const BipartiteDims& dims, int i = 0, int j = 0) {
  if (i < 0 || i >= dims.m || j < 0 || j >= dims.n) {
    throw Error(ErrorCode::kParameter, "product basis index out of range");
  }
  return PureState::checked(basis_ket(dims.total(), i * dims.n + j), dims);
}

// Swap operator sum_ij |ij><ji| on n x n.
inline Matrix swap_operator(int n) {
  Matrix s = Matrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i * n + j, j * n + i) = 1.0;
  return s;
}

// sigma_alpha = 2/7 |psi+><psi+| + alpha/7 sigma_+ + (5 - alpha)/7 sigma_-.
inline DensityMatrix horodecki_state(double alpha) {
  if (!(alpha >= 2.0 && alpha <= 5.0)) {
    throw Error(ErrorCode::kParameter, "alpha must lie in [2, 5]", alpha);
  }
  const BipartiteDims dims(3, 3);
  const Matrix bell = max_entangled(3).projector();
  Matrix plus = Matrix::Zero(9, 9), minus = Matrix::Zero(9, 9);
  for (auto [i, j] : detail::Pairs{{0, 1}, {1, 2}, {2, 0}}) plus(i * 3 + j, i * 3 + j) = 1.0 / 3.0;
  for (auto [i, j] : detail::Pairs{{1, 0}, {2, 1}, {0, 2}}) minus(i * 3 + j, i * 3 + j) = 1.0 / 3.0;
  const Matrix rho = (2.0 / 7.0) * bell + (alpha / 7.0) * plus + ((5.0 - alpha) / 7.0) * minus;
  return DensityMatrix::checked(rho, dims);
}

// (1 - f)/(n^2 - 1) I + (n^2 f - 1)/(n^2 - 1) |psi+><psi+|, I on the full
// n^2-dimensional space. Out-of-range f fails validation with POSITIVITY.
inline DensityMatrix isotropic_state(int n, double f) {
  const BipartiteDims dims(n, n);
  const double d2 = static_cast<double>(n) * n;
  const Matrix rho = ((1.0 - f) / (d2 - 1.0)) * Matrix::Identity(n * n, n * n) +
                     ((d2 * f - 1.0) / (d2 - 1.0)) * max_entangled(n).projector();
  return DensityMatrix::checked(rho, dims);
}

// (n - f)/(n^3 - n) I + (n f - 1)/(n^3 - n) Swap.
inline DensityMatrix werner_state(int n, double f) {
  const BipartiteDims dims(n, n);
  const double denom = static_cast<double>(n) * n * n - n;
  const Matrix rho = ((n - f) / denom) * Matrix::Identity(n * n, n * n) +
                     ((n * f - 1.0) / denom) * swap_operator(n);
  return DensityMatrix::checked(rho, dims);
}

// |0><1| + |1><0| + sum_{i>=2} |i><i|: the first-subsystem frame of the
// Werner scan (paired with V = I).
inline Matrix werner_swap_frame(int n) {
  Matrix u = Matrix::Identity(n, n);
  u(0, 0) = 0.0;
  u(1, 1) = 0.0;
  u(0, 1) = 1.0;
  u(1, 0) = 1.0;
  return u;
}

// The 4x4 distillation example, transcribed term by term. This operator is
// Hermitian with unit trace but has a negative eigenvalue (about -0.069 p)
// for every p in (0, 1]; example4_state() therefore rejects it.
inline Matrix example4_operator(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorCode::kParameter, "p must lie in (0, 1]", p);
  auto idx = [](int i, int j) { return i * 4 + j; };
  Matrix rho = Matrix::Zero(16, 16);
  for (auto [i, j] : detail::Pairs{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}})
    rho(idx(i, j), idx(i, j)) += p / 6.0;
  const std::pair<int, int> off[][2] = {
      {{0, 0}, {1, 2}}, {{0, 1}, {1, 2}}, {{1, 2}, {0, 0}},
      {{1, 2}, {0, 1}}, {{1, 0}, {1, 1}}, {{1, 1}, {1, 0}},
  };
  for (const auto& term : off)
    rho(idx(term[0].first, term[0].second), idx(term[1].first, term[1].second)) -= p / 6.0;
  rho(idx(2, 2), idx(2, 2)) += (1.0 - p) / 2.0;
  rho(idx(3, 3), idx(3, 3)) += (1.0 - p) / 2.0;
  return rho;
}

inline DensityMatrix example4_state(double p) {
  return DensityMatrix::checked(example4_operator(p), BipartiteDims(4, 4));
}

// ---------------------------------------------------------------------------
// Random ensembles

inline PureState random_pure(const BipartiteDims& dims, Rng& rng) {
  return PureState::normalized(haar_random_vector(dims.total(), rng), dims);
}

inline std::vector<double> dirichlet_uniform(int k, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(k);
  double total = 0.0;
  for (double& x : w) total += (x = expo(rng));
  for (double& x : w) x /= total;
  return w;
}

// Convex mixture of k Haar-random pure product states.
inline DensityMatrix random_separable(const BipartiteDims& dims, int k, Rng& rng) {
  if (k < 1) throw Error(ErrorCode::kParameter, "mixture needs k >= 1");
  const std::vector<double> w = dirichlet_uniform(k, rng);
  Matrix rho = Matrix::Zero(dims.total(), dims.total());
  for (int c = 0; c < k; ++c) {
    const Vector a = haar_random_vector(dims.m, rng);
    const Vector b = haar_random_vector(dims.n, rng);
    const Vector x = tensor_product(a, b);
    rho += w[c] * (x * x.adjoint());
  }
  return DensityMatrix::checked(rho, dims);
}

// Convex mixture of k Haar-random (generally entangled) pure states.
inline DensityMatrix random_mixture(const BipartiteDims& dims, int k, Rng& rng) {
  if (k < 1) throw Error(ErrorCode::kParameter, "mixture needs k >= 1");
  const std::vector<double> w = dirichlet_uniform(k, rng);
  Matrix rho = Matrix::Zero(dims.total(), dims.total());
  for (int c = 0; c < k; ++c) {
    const Vector x = haar_random_vector(dims.total(), rng);
    rho += w[c] * (x * x.adjoint());
  }
  return DensityMatrix::checked(rho, dims);
}

// ---------------------------------------------------------------------------
// Family vocabulary shared with the command line.

enum class Family { kHorodecki, kIsotropic, kWerner, kExample4, kMaxEntangled, kProduct, kRandomMixture };

inline std::optional<Family> parse_family(std::string_view tag) {
  if (tag == "horodecki") return Family::kHorodecki;
  if (tag == "isotropic") return Family::kIsotropic;
  if (tag == "werner") return Family::kWerner;
  if (tag == "example4") return Family::kExample4;
  if (tag == "max_entangled") return Family::kMaxEntangled;
  if (tag == "product") return Family::kProduct;
  if (tag == "random_mixture") return Family::kRandomMixture;
  return std::nullopt;
}

inline const char* to_string(Family f) {
  switch (f) {
    case Family::kHorodecki: return "horodecki";
    case Family::kIsotropic: return "isotropic";
    case Family::kWerner: return "werner";
    case Family::kExample4: return "example4";
    case Family::kMaxEntangled: return "max_entangled";
    case Family::kProduct: return "product";
    case Family::kRandomMixture: return "random_mixture";
  }
  return "unknown";
}

struct FamilyParams {
  Family family = Family::kMaxEntangled;
  double alpha = 3.0;  // horodecki
  double f = 0.5;      // isotropic, werner
  double p = 1.0;      // example4
  int n = 2;           // second (or both) subsystem dimension
  int m = 2;           // first subsystem dimension for product / random_mixture
  int k = 2;           // random_mixture components
  int i = 0, j = 0;    // product basis indices
  std::uint64_t seed = 0;
};

inline DensityMatrix make_family(const FamilyParams& fp) {
  switch (fp.family) {
    case Family::kHorodecki: return horodecki_state(fp.alpha);
    case Family::kIsotropic: return isotropic_state(fp.n, fp.f);
    case Family::kWerner: return werner_state(fp.n, fp.f);
    case Family::kExample4: return example4_state(fp.p);
    case Family::kMaxEntangled: return DensityMatrix::from_pure(max_entangled(fp.n));
    case Family::kProduct:
      return DensityMatrix::from_pure(product_state(BipartiteDims(fp.m, fp.n), fp.i, fp.j));
    case Family::kRandomMixture: {
      Rng rng = substream(fp.seed, 0);
      return random_mixture(BipartiteDims(fp.m, fp.n), fp.k, rng);
    }
  }
  throw Error(ErrorCode::kParameter, "unknown family");
}

}  // namespace entwit
