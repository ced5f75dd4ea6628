#include <cmath>
#include <variant>
#include <vector>

#include <gtest/gtest.h>

#include "entwit/criteria.hpp"
#include "entwit/search.hpp"
#include "entwit/zoo.hpp"

using namespace entwit;

TEST(ParamToUnitary, ZeroIsIdentity) {
  const std::vector<double> zero(9, 0.0);
  EXPECT_LT((param_to_unitary(zero, 3) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ParamToUnitary, AlwaysUnitary) {
  Rng rng = substream(31, 0);
  std::normal_distribution<double> g(0.0, 3.0);
  for (int d : {2, 3, 5}) {
    for (int t = 0; t < 20; ++t) {
      std::vector<double> p(d * d);
      for (double& x : p) x = g(rng);
      EXPECT_LE(unitarity_defect(param_to_unitary(p, d)), 1e-12);
    }
  }
}

TEST(ParamToUnitary, LengthMismatchThrows) {
  const std::vector<double> p(5, 0.0);
  EXPECT_THROW(param_to_unitary(p, 2), Error);
}

TEST(ParamToUnitary, GeneratorIsHermitian) {
  std::vector<double> p(16);
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = 0.1 * static_cast<double>(k) - 0.7;
  EXPECT_LT(hermiticity_defect(hermitian_generator(p, 4)), 1e-15);
}

TEST(NelderMead, FindsQuadraticMinimum) {
  auto f = [](const Eigen::VectorXd& x) {
    return (x(0) - 1.0) * (x(0) - 1.0) + 10.0 * (x(1) + 2.0) * (x(1) + 2.0) + 3.0;
  };
  const SimplexResult r = nelder_mead(f, Eigen::VectorXd::Zero(2), 0.5, 2000, 1e-10);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x(0), 1.0, 1e-4);
  EXPECT_NEAR(r.x(1), -2.0, 1e-4);
  EXPECT_NEAR(r.value, 3.0, 1e-8);
}

TEST(NelderMead, RosenbrockWithBudget) {
  auto f = [](const Eigen::VectorXd& x) {
    return 100 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1 - x(0), 2);
  };
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1.0;
  const SimplexResult r = nelder_mead(f, x0, 0.5, 5000, 1e-10);
  EXPECT_NEAR(r.x(0), 1.0, 1e-3);
  EXPECT_NEAR(r.x(1), 1.0, 1e-3);
  const SimplexResult cut = nelder_mead(f, x0, 0.5, 3, 1e-10);
  EXPECT_FALSE(cut.converged);
  EXPECT_EQ(cut.iterations, 3);
}

TEST(Constructive, BellUsesIdentityFrame) {
  const ConstructiveResult r = constructive_pure_violation(max_entangled(2), Normalization::kLiteral);
  const auto* hit = std::get_if<ConstructiveViolation>(&r);
  ASSERT_NE(hit, nullptr);
  EXPECT_NEAR(hit->eval.w_val, -1.0 / 64, 1e-12);
  for (int k = 0; k < 2; ++k) {
    EXPECT_NEAR(std::abs(hit->u(k, k)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(hit->v(k, k)), 1.0, 1e-12);
  }
}

TEST(Constructive, ProductStateReport) {
  const ConstructiveResult r = constructive_pure_violation(product_state(BipartiteDims(2, 3), 0, 0));
  const auto* report = std::get_if<ProductStateReport>(&r);
  ASSERT_NE(report, nullptr);
  EXPECT_EQ(report->schmidt.rank(), 1);
}

TEST(Constructive, RandomEntangledStatesViolate) {
  Rng rng = substream(32, 0);
  for (auto [m, n] : {std::pair{3, 4}, std::pair{4, 3}, std::pair{2, 5}, std::pair{5, 2}}) {
    for (int t = 0; t < 25; ++t) {
      const PureState phi = random_pure(BipartiteDims(m, n), rng);
      for (Normalization norm : {Normalization::kTight, Normalization::kLiteral}) {
        const ConstructiveResult r = constructive_pure_violation(phi, norm);
        const auto* hit = std::get_if<ConstructiveViolation>(&r);
        ASSERT_NE(hit, nullptr);
        EXPECT_LT(hit->eval.w_val, -1e-12);
        // in the Schmidt frame only <Q> survives
        EXPECT_NEAR(hit->eval.h_val, 0.0, 1e-12);
        EXPECT_NEAR(hit->eval.p_val, 0.0, 1e-12);
      }
    }
  }
}

TEST(MaxViolation, SeparableGivesZero) {
  Rng rng = substream(33, 0);
  SearchConfig cfg;
  cfg.restarts = 8;
  for (int t = 0; t < 5; ++t) {
    const ViolationReport r = max_violation(random_separable(BipartiteDims(2, 2), 3, rng), cfg);
    EXPECT_LE(r.f_value, 1e-10);
  }
}

TEST(MaxViolation, BellAtLeastIdentityValue) {
  SearchConfig cfg;
  cfg.restarts = 4;
  cfg.normalization = Normalization::kLiteral;
  const ViolationReport r = max_violation(DensityMatrix::from_pure(max_entangled(2)), cfg);
  EXPECT_GE(r.f_value, 1.0 / 64 - 1e-12);
  EXPECT_LT(unitarity_defect(r.best_u), 1e-12);
  EXPECT_LT(unitarity_defect(r.best_v), 1e-12);
  EXPECT_NEAR(evaluate_witness(DensityMatrix::from_pure(max_entangled(2)), r.best_u, r.best_v,
                               Normalization::kLiteral)
                  .w_val,
              r.best_eval.w_val, 1e-12);
}

TEST(MaxViolation, SeparableIsotropicGivesZero) {
  SearchConfig cfg;
  cfg.restarts = 10;
  EXPECT_LE(max_violation(isotropic_state(2, 0.4), cfg).f_value, 1e-10);
}

TEST(MaxViolation, EntangledIsotropicDetected) {
  SearchConfig cfg;
  cfg.restarts = 10;
  EXPECT_GT(max_violation(isotropic_state(2, 0.6), cfg).f_value, 1e-10);
}

TEST(MaxViolation, DeterministicForFixedSeed) {
  Rng rng = substream(34, 0);
  const DensityMatrix rho = random_mixture(BipartiteDims(2, 3), 3, rng);
  SearchConfig cfg;
  cfg.restarts = 6;
  cfg.seed = 99;
  const ViolationReport a = max_violation(rho, cfg), b = max_violation(rho, cfg);
  EXPECT_EQ(a.f_value, b.f_value);
  EXPECT_EQ(a.best_restart, b.best_restart);
  EXPECT_EQ(a.evaluations, b.evaluations);
  EXPECT_TRUE(a.best_u == b.best_u);
  EXPECT_TRUE(a.best_v == b.best_v);
}

TEST(MaxViolation, RejectsBadConfig) {
  SearchConfig cfg;
  cfg.restarts = 0;
  EXPECT_THROW(max_violation(DensityMatrix::from_pure(max_entangled(2)), cfg), Error);
}

TEST(MaxViolation, TwoByThreeMatchesPptOnASample) {
  Rng rng = substream(35, 0);
  SearchConfig cfg;
  cfg.restarts = 20;
  int npt = 0, detected = 0;
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = random_mixture(BipartiteDims(2, 3), 2 + t % 5, rng);
    const bool is_npt = ppt_check(rho).is_npt;
    const double f = max_violation(rho, cfg).f_value;
    if (!is_npt) EXPECT_LE(f, 1e-10);
    npt += is_npt;
    detected += is_npt && f > 1e-10;
  }
  EXPECT_GE(detected, npt - 1);
}
