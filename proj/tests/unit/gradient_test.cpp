#include "dimmax/gradient.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dimmax/error.hpp"
#include "dimmax/tail_analysis.hpp"
#include "oracles.hpp"

namespace dimmax {
namespace {

const OperatorDiscretization kDisc = OperatorDiscretization::chebyshev();

double lambda_of(const ProbVec& p) { return EquilibriumState(p, kDisc).lyapunov(); }
double dim_of(const ProbVec& p) { return entropy(p) / lambda_of(p); }

TEST(GradEntropy, Values) {
  const auto g = grad_entropy(ProbVec({0.5, 0.5}));
  EXPECT_NEAR(g[0], std::log(2.0) - 1.0, 1e-15);
  EXPECT_NEAR(g[1], -0.30685281944005469, 1e-15);
  const double e = 1.0 / std::numbers::e;
  EXPECT_NEAR(grad_entropy(ProbVec({e, 1.0 - e}))[0], 0.0, 1e-15);
  EXPECT_THROW(grad_entropy(ProbVec({0.5, 0.0, 0.5})), DomainError);
}

TEST(GradLyapunov, DiracAndHalfHalf) {
  const auto dirac = grad_lyapunov(ProbVec({1.0}), kDisc);
  EXPECT_NEAR(dirac.leading[0], 0.0, 1e-13);
  EXPECT_NEAR(dirac.dlam[0], 0.0, 1e-12);

  const ProbVec half({0.5, 0.5});
  const auto g = grad_lyapunov(half, kDisc);
  const double fd = oracle::tangent_derivative(lambda_of, half, 0, 1);
  EXPECT_NEAR(g.dlam[0] - g.dlam[1], fd, 1e-6);
}

// The first-order term I_i / p_i - lambda on its own is not the derivative:
// along e_1 - e_2 at (0.5, 0.5) it is about 27% too large in magnitude.
TEST(GradLyapunov, LeadingTermAloneMissesCorrelations) {
  const ProbVec half({0.5, 0.5});
  const auto g = grad_lyapunov(half, kDisc);
  const double fd = oracle::tangent_derivative(lambda_of, half, 0, 1);
  EXPECT_NEAR(fd, -0.79755, 1e-4);
  EXPECT_NEAR(g.leading[0] - g.leading[1], -1.01202, 1e-4);
  EXPECT_GT(std::abs((g.leading[0] - g.leading[1]) - fd), 0.2);
}

TEST(GradLyapunov, CrossCheckAgainstCylinderDifferences) {
  const ProbVec p({0.5, 0.3, 0.2});
  const auto g = grad_lyapunov(p, kDisc);
  const double h = 1e-3;
  const auto cyl = [](const ProbVec& q) { return lyapunov_by_cylinders(q, 13).value; };
  const double fd = (cyl(oracle::shifted(p, 0, 2, h)) - cyl(oracle::shifted(p, 0, 2, -h))) / (2 * h);
  EXPECT_NEAR(g.dlam[0] - g.dlam[2], fd, 1e-4);
}

TEST(GradDimension, RejectsDiracAndBoundary) {
  EXPECT_THROW(grad_dimension(ProbVec({1.0}), kDisc), DomainError);
  EXPECT_THROW(grad_dimension(ProbVec({0.5, 0.0, 0.5}), kDisc), DomainError);
}

TEST(GradDimension, HalfHalfIsAsymmetric) {
  const ProbVec half({0.5, 0.5});
  const GradReport r = grad_dimension(half, kDisc);
  EXPECT_GT(std::abs(r.dd[0] - r.dd[1]), 0.1);
  const double fd = oracle::tangent_derivative(dim_of, half, 0, 1);
  EXPECT_NEAR(r.dd[0] - r.dd[1], fd, 1e-5 * std::abs(fd));
}

class GradientBattery : public ::testing::TestWithParam<std::size_t> {};

TEST_P(GradientBattery, PairwiseDerivativesMatchFiniteDifferences) {
  const std::size_t n = GetParam();
  std::mt19937_64 rng(1000 + n);
  for (int trial = 0; trial < 20; ++trial) {
    const ProbVec p = oracle::random_interior(n, rng, 0.05);
    const GradReport r = grad_dimension(p, kDisc);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double fd = oracle::tangent_derivative(dim_of, p, i, j);
        EXPECT_LE(std::abs(r.dd[i] - r.dd[j] - fd), 1e-5 * std::abs(fd))
            << "n=" << n << " trial " << trial << " pair " << i << "," << j;
      }
    }
  }
}

TEST_P(GradientBattery, EulerIdentities) {
  const std::size_t n = GetParam();
  std::mt19937_64 rng(2000 + n);
  for (int trial = 0; trial < 20; ++trial) {
    const ProbVec p = oracle::random_interior(n, rng, 0.0);
    const GradReport r = grad_dimension(p, kDisc);
    double sh = 0.0;
    double sl = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sh += p.weights()[i] * r.dh[i];
      sl += p.weights()[i] * r.dlam[i];
    }
    EXPECT_NEAR(sh, r.entropy - 1.0, 1e-9);
    EXPECT_NEAR(sl, 0.0, 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, GradientBattery, ::testing::Values(2u, 3u, 5u));

TEST(Criticality, EquivalentToVanishingTangentDerivatives) {
  const auto d_of = [](double p1) { return dim_of(ProbVec({p1, 1.0 - p1})); };
  const auto best = oracle::grid_golden_max(d_of, 0.01, 0.99);
  const ProbVec opt({best.x, 1.0 - best.x});
  const GradReport at_opt = grad_dimension(opt, kDisc);
  EXPECT_LT(at_opt.crit_residual, 1e-7);
  EXPECT_LT(std::abs(oracle::tangent_derivative(dim_of, opt, 0, 1)), 1e-7);

  const ProbVec off({0.3, 0.7});
  const GradReport away = grad_dimension(off, kDisc);
  EXPECT_GT(away.crit_residual, 1e-2);
  EXPECT_GT(std::abs(oracle::tangent_derivative(dim_of, off, 0, 1)), 1e-2);
  // C_i = (lambda) dd_i - d lambda, so equal C_i means equal dd_i.
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(away.criticality[i], away.lyapunov * away.dd[i] - away.dimension * away.lyapunov,
                1e-12);
  }
}

TEST(Criticality, SpreadHelper) {
  const std::vector<double> v{3.0, -1.0, 2.0};
  EXPECT_EQ(spread(v), 4.0);
  EXPECT_EQ(spread(std::vector<double>{}), 0.0);
}

}  // namespace
}  // namespace dimmax
