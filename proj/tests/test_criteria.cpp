#include <gtest/gtest.h>

#include "entwit/criteria.hpp"
#include "entwit/zoo.hpp"
#include "oracles.hpp"

using namespace entwit;

TEST(Ppt, BellIsNpt) {
  const PptResult r = ppt_check(DensityMatrix::from_pure(max_entangled(2)));
  EXPECT_NEAR(r.min_eigenvalue, -0.5, 1e-12);
  EXPECT_TRUE(r.is_npt);
}

TEST(Ppt, ProductStatesArePpt) {
  Rng rng = substream(21, 0);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = random_separable(BipartiteDims(2 + t % 3, 3), 1, rng);
    const PptResult r = ppt_check(rho);
    EXPECT_GE(r.min_eigenvalue, -1e-12);
    EXPECT_FALSE(r.is_npt);
  }
}

TEST(Ppt, HorodeckiRanges) {
  EXPECT_FALSE(ppt_check(horodecki_state(2.5)).is_npt);
  EXPECT_FALSE(ppt_check(horodecki_state(3.5)).is_npt);
  EXPECT_FALSE(ppt_check(horodecki_state(4.0)).is_npt);
  EXPECT_TRUE(ppt_check(horodecki_state(4.01)).is_npt);
  EXPECT_TRUE(ppt_check(horodecki_state(4.5)).is_npt);
}

TEST(Ppt, SideIndependentVerdict) {
  Rng rng = substream(22, 0);
  for (int t = 0; t < 30; ++t) {
    const DensityMatrix rho = random_mixture(BipartiteDims(2, 3), 2 + t % 4, rng);
    const PptResult a = ppt_check(rho, Subsystem::kFirst);
    const PptResult b = ppt_check(rho, Subsystem::kSecond);
    EXPECT_EQ(a.is_npt, b.is_npt);
    // T_B = (T_A)^T has the same spectrum
    EXPECT_NEAR(a.min_eigenvalue, b.min_eigenvalue, 1e-12);
  }
}

TEST(Ppt, AgreesWithHandWrittenTranspose) {
  Rng rng = substream(23, 0);
  const DensityMatrix rho = random_mixture(BipartiteDims(3, 2), 3, rng);
  EXPECT_NEAR(ppt_check(rho).min_eigenvalue,
              oracle::lowest_eigenvalue(oracle::transpose_first(rho.matrix(), 3, 2)), 1e-12);
}

TEST(Reduction, BellViolates) {
  const ReductionResult r = reduction_check(DensityMatrix::from_pure(max_entangled(2)));
  EXPECT_NEAR(r.min_eig_a, -0.5, 1e-12);
  EXPECT_NEAR(r.min_eig_b, -0.5, 1e-12);
  EXPECT_TRUE(r.violated);
}

TEST(Reduction, MaximallyMixedDoesNot) {
  const DensityMatrix rho = DensityMatrix::checked(Matrix::Identity(4, 4) / 4.0, BipartiteDims(2, 2));
  EXPECT_FALSE(reduction_check(rho).violated);
}

TEST(Reduction, ViolationImpliesNpt) {
  Rng rng = substream(24, 0);
  int violated = 0;
  for (int t = 0; t < 200; ++t) {
    const int m = 2 + t % 2, n = 2 + (t / 2) % 3;
    const DensityMatrix rho = random_mixture(BipartiteDims(m, n), 1 + t % 4, rng);
    const ReductionResult r = reduction_check(rho);
    if (r.violated) {
      ++violated;
      EXPECT_TRUE(ppt_check(rho).is_npt);
    }
  }
  EXPECT_GT(violated, 0);
}

TEST(Reduction, IsotropicThreshold) {
  // reduction detects isotropic states exactly when f > 1/n
  for (int n : {2, 3}) {
    EXPECT_FALSE(reduction_check(isotropic_state(n, 1.0 / n - 0.01)).violated);
    EXPECT_TRUE(reduction_check(isotropic_state(n, 1.0 / n + 0.01)).violated);
  }
}
