#include <cmath>

#include <gtest/gtest.h>

#include "entwit/criteria.hpp"
#include "entwit/zoo.hpp"

using namespace entwit;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no entwit::Error thrown";
  return ErrorCode::kNumeric;
}

}  // namespace

TEST(Zoo, MaxEntangledTwoIsBell) {
  const Vector a = max_entangled(2).amplitudes();
  EXPECT_NEAR(std::abs(a(0) - 1 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a(3) - 1 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a(1)) + std::abs(a(2)), 0.0, 1e-15);
}

TEST(Zoo, HorodeckiValidOverRange) {
  for (double alpha = 2.0; alpha <= 5.0 + 1e-12; alpha += 0.25) {
    const DensityMatrix r = horodecki_state(std::min(alpha, 5.0));
    EXPECT_NEAR(r.matrix().trace().real(), 1.0, 1e-12);
  }
  EXPECT_EQ(code_of([] { horodecki_state(1.9); }), ErrorCode::kParameter);
  EXPECT_EQ(code_of([] { horodecki_state(5.1); }), ErrorCode::kParameter);
}

TEST(Zoo, HorodeckiPptBoundaryAtFour) {
  double first_npt = -1.0;
  for (int k = 0; k <= 300; ++k) {
    const double alpha = 2.0 + 0.01 * k;
    if (ppt_check(horodecki_state(alpha)).is_npt) {
      first_npt = alpha;
      break;
    }
  }
  EXPECT_NEAR(first_npt, 4.01, 1e-9);
}

TEST(Zoo, IsotropicSpecialPoints) {
  for (int n : {2, 3, 4}) {
    const DensityMatrix mixed = isotropic_state(n, 1.0 / (n * n));
    EXPECT_LT((mixed.matrix() - Matrix::Identity(n * n, n * n) / (n * n)).cwiseAbs().maxCoeff(),
              1e-14);
    const DensityMatrix pure = isotropic_state(n, 1.0);
    EXPECT_LT((pure.matrix() - max_entangled(n).projector()).cwiseAbs().maxCoeff(), 1e-14);
  }
  EXPECT_EQ(code_of([] { isotropic_state(2, 1.2); }), ErrorCode::kPositivity);
}

TEST(Zoo, WernerSpecialPoints) {
  for (int n : {2, 3}) {
    const DensityMatrix mixed = werner_state(n, 1.0 / n);
    EXPECT_LT((mixed.matrix() - Matrix::Identity(n * n, n * n) / (n * n)).cwiseAbs().maxCoeff(),
              1e-14);
  }
  Vector singlet = Vector::Zero(4);
  singlet(1) = 1 / std::sqrt(2.0);
  singlet(2) = -1 / std::sqrt(2.0);
  EXPECT_LT((werner_state(2, -1.0).matrix() - singlet * singlet.adjoint()).cwiseAbs().maxCoeff(),
            1e-14);
  EXPECT_EQ(code_of([] { werner_state(3, -1.5); }), ErrorCode::kPositivity);
}

TEST(Zoo, WernerPptIffNonnegative) {
  for (int n : {2, 3}) {
    for (int k = -100; k <= 100; k += 5) {
      const double f = 0.01 * k;
      EXPECT_EQ(ppt_check(werner_state(n, f)).is_npt, f < 0) << n << " " << f;
    }
  }
}

TEST(Zoo, WernerSwapFrameIsUnitaryPermutation) {
  for (int n : {2, 3, 5}) {
    const Matrix u = werner_swap_frame(n);
    EXPECT_LT(unitarity_defect(u), 1e-15);
    EXPECT_EQ(u(0, 1), Complex(1.0));
    EXPECT_EQ(u(1, 0), Complex(1.0));
  }
}

TEST(Zoo, Example4TraceAndSupport) {
  for (double p : {0.1, 0.5, 1.0}) EXPECT_NEAR(example4_operator(p).trace().real(), 1.0, 1e-14);
  const Matrix r = example4_operator(1.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool inside = i < 2 && j < 3;
      if (!inside) EXPECT_EQ(r(i * 4 + j, i * 4 + j), Complex(0.0));
    }
  EXPECT_EQ(code_of([] { example4_operator(0.0); }), ErrorCode::kParameter);
}

TEST(Zoo, Example4AsPrintedIsNotPositive) {
  // The transcribed operator has a negative eigenvalue proportional to p,
  // so the checked constructor refuses it.
  for (double p : {0.1, 0.5, 1.0}) {
    EXPECT_NEAR(min_eigenvalue(example4_operator(p)) / p, -0.0690355937, 1e-8);
    EXPECT_EQ(code_of([p] { example4_state(p); }), ErrorCode::kPositivity);
  }
}

TEST(Zoo, RandomSeparableIsPptAndValid) {
  Rng rng = substream(41, 0);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix r = random_separable(BipartiteDims(3, 3), 1 + t % 6, rng);
    EXPECT_FALSE(ppt_check(r).is_npt);
  }
}

TEST(Zoo, DirichletWeightsSumToOne) {
  Rng rng = substream(42, 0);
  const std::vector<double> w = dirichlet_uniform(6, rng);
  double s = 0;
  for (double x : w) {
    EXPECT_GT(x, 0.0);
    s += x;
  }
  EXPECT_NEAR(s, 1.0, 1e-14);
}

TEST(Zoo, FamilyNames) {
  for (Family f : {Family::kHorodecki, Family::kIsotropic, Family::kWerner, Family::kExample4,
                   Family::kMaxEntangled, Family::kProduct, Family::kRandomMixture})
    EXPECT_EQ(parse_family(to_string(f)), f);
  EXPECT_FALSE(parse_family("ghz").has_value());
}

TEST(Zoo, MakeFamilyProductAndMixture) {
  FamilyParams fp;
  fp.family = Family::kProduct;
  fp.m = 2;
  fp.n = 3;
  fp.i = 1;
  fp.j = 2;
  const DensityMatrix r = make_family(fp);
  EXPECT_EQ(r.matrix()(5, 5), Complex(1.0));
  fp.family = Family::kRandomMixture;
  fp.k = 3;
  fp.seed = 5;
  EXPECT_TRUE(make_family(fp).matrix() == make_family(fp).matrix());
  fp.i = 7;
  fp.family = Family::kProduct;
  EXPECT_EQ(code_of([&] { make_family(fp); }), ErrorCode::kParameter);
}
