#include "dimmax/optimizer.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dimmax/error.hpp"
#include "oracles.hpp"

namespace dimmax {
namespace {

const OperatorDiscretization kDisc = OperatorDiscretization::chebyshev();

double dim_of(const ProbVec& p) { return entropy(p) / EquilibriumState(p, kDisc).lyapunov(); }

oracle::Maximum two_digit_oracle() {
  return oracle::grid_golden_max([](double p1) { return dim_of(ProbVec({p1, 1.0 - p1})); },
                                 0.001, 0.999, 1000, 1e-11);
}

TEST(DefaultInitial, Shape) {
  const ProbVec p = default_initial(4);
  EXPECT_NEAR(p.weight(2) / p.weight(1), std::pow(2.0, -1.9), 1e-15);
  EXPECT_TRUE(p.interior());
}

TEST(Maximize, TwoDigitsMatchOneDimensionalSearch) {
  const auto best = two_digit_oracle();
  // Independent Python prototype of the same problem.
  EXPECT_NEAR(best.value, 0.5312327764, 1e-9);
  EXPECT_NEAR(best.x, 0.602688, 1e-6);
  for (const auto method : {AscentMethod::fixed_point, AscentMethod::exp_gradient}) {
    OptimizeOptions opt;
    opt.method = method;
    opt.tol = 1e-10;
    const OptimizeResult r = maximize_on_simplex(2, opt);
    ASSERT_TRUE(r.converged) << to_string(method);
    EXPECT_NEAR(r.grad.dimension, best.value, 1e-8);
    EXPECT_NEAR(r.report.dimension, best.value, 1e-8);
    EXPECT_NEAR(r.p.weight(1), best.x, 1e-6);
    EXPECT_LE(r.grad.crit_residual, 1e-10);
  }
}

TEST(Maximize, StartingAtTheOptimumStopsImmediately) {
  OptimizeOptions opt;
  opt.tol = 1e-8;
  const OptimizeResult first = maximize_on_simplex(2, opt);
  opt.init = first.p;
  const OptimizeResult again = maximize_on_simplex(2, opt);
  EXPECT_TRUE(again.converged);
  EXPECT_LE(again.iterations, 1u);
}

TEST(Maximize, MultiStartAgreement) {
  std::mt19937_64 rng(31);
  std::vector<ProbVec> optima;
  for (int start = 0; start < 5; ++start) {
    const ProbVec init = oracle::random_interior(3, rng, 0.05);
    for (const auto method : {AscentMethod::fixed_point, AscentMethod::exp_gradient}) {
      OptimizeOptions opt;
      opt.init = init;
      opt.method = method;
      const OptimizeResult r = maximize_on_simplex(3, opt);
      ASSERT_TRUE(r.converged);
      optima.push_back(r.p);
    }
  }
  for (const ProbVec& p : optima) {
    for (Digit k = 1; k <= 3; ++k) EXPECT_NEAR(p.weight(k), optima.front().weight(k), 1e-6);
  }
}

TEST(Maximize, AscentAndMonotoneWeights) {
  for (const auto method : {AscentMethod::fixed_point, AscentMethod::exp_gradient}) {
    OptimizeOptions opt;
    opt.method = method;
    const OptimizeResult r = maximize_on_simplex(8, opt);
    ASSERT_TRUE(r.converged);
    for (std::size_t s = 1; s < r.dimension_history.size(); ++s) {
      EXPECT_GE(r.dimension_history[s], r.dimension_history[s - 1] - 1e-14);
    }
    for (Digit k = 2; k <= 8; ++k) EXPECT_GT(r.p.weight(k - 1), r.p.weight(k));
    EXPECT_LE(r.residual_history.back(), opt.tol);
  }
}

TEST(Maximize, MonotoneInAlphabetSize) {
  double prev = 0.0;
  for (std::size_t n = 2; n <= 7; ++n) {
    const OptimizeResult r = maximize_on_simplex(n);
    ASSERT_TRUE(r.converged);
    EXPECT_GE(r.grad.dimension, prev - 1e-10);
    prev = r.grad.dimension;
  }
}

TEST(Maximize, NonConvergenceIsFlagged) {
  OptimizeOptions opt;
  opt.max_iter = 2;
  const OptimizeResult r = maximize_on_simplex(10, opt);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 2u);
  EXPECT_GT(r.grad.crit_residual, opt.tol);
}

TEST(Maximize, RejectsBadInput) {
  EXPECT_THROW(maximize_on_simplex(1), DomainError);
  OptimizeOptions opt;
  opt.init = ProbVec({0.5, 0.0, 0.5});
  EXPECT_THROW(maximize_on_simplex(3, opt), DomainError);
  opt.init = ProbVec({0.5, 0.5});
  EXPECT_THROW(maximize_on_simplex(3, opt), DomainError);
}

TEST(WarmStart, PadsWithPowerLaw) {
  const ProbVec p = warm_start_from(ProbVec({0.6, 0.4}), 0.5, 4);
  ASSERT_EQ(p.support_n(), 4u);
  EXPECT_NEAR(p.weight(3) / p.weight(2), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(p.weight(4) / p.weight(2), 0.5, 1e-14);
  EXPECT_THROW(warm_start_from(ProbVec({0.6, 0.4}), 0.5, 2), DomainError);
}

TEST(WarmStart, SameOptimumAsColdStart) {
  const std::vector<std::size_t> ns{4, 8, 16};
  const SweepResult warm = sweep_n(ns, {}, true);
  const SweepResult cold = sweep_n(ns, {}, false);
  for (std::size_t s = 0; s < ns.size(); ++s) {
    ASSERT_TRUE(warm.per_n[s].converged);
    ASSERT_TRUE(cold.per_n[s].converged);
    for (Digit k = 1; k <= ns[s]; ++k) {
      EXPECT_NEAR(warm.per_n[s].p.weight(k), cold.per_n[s].p.weight(k), 1e-7);
    }
  }
}

TEST(Sweep, IncreasingAndWithinKnownBounds) {
  const std::vector<std::size_t> ns{2, 4, 8, 16};
  const SweepResult s = sweep_n(ns);
  ASSERT_EQ(s.per_n.size(), 4u);
  for (std::size_t i = 0; i < s.per_n.size(); ++i) {
    EXPECT_TRUE(s.per_n[i].converged);
    EXPECT_GT(s.per_n[i].dimension, 0.5);
    EXPECT_LT(s.per_n[i].dimension, 1.0 - 5e-5);
    if (i > 0) EXPECT_GT(s.per_n[i].dimension, s.per_n[i - 1].dimension);
  }
  EXPECT_DOUBLE_EQ(s.d_max, s.per_n.back().dimension);
  EXPECT_TRUE(s.extrapolation.valid);
  EXPECT_GE(s.D_estimate, s.d_max);
  EXPECT_LT(s.D_estimate, 1.0);
  ASSERT_TRUE(s.extrapolation.holdout_residual.has_value());
}

// The leading weights converge, but only at rate about 1/n: the shift
// between consecutive doublings halves each time. At 32 -> 64 it is still
// a few times 1e-3.
TEST(Sweep, LeadingCoordinatesStabilize) {
  const std::vector<std::size_t> ns{16, 32, 64};
  const SweepResult s = sweep_n(ns);
  for (Digit k = 1; k <= 4; ++k) {
    const double first = std::abs(s.per_n[1].p.weight(k) - s.per_n[0].p.weight(k));
    const double second = std::abs(s.per_n[2].p.weight(k) - s.per_n[1].p.weight(k));
    EXPECT_LT(second, 0.6 * first) << k;
    EXPECT_LT(second, 5e-3) << k;
  }
}

TEST(Sweep, RejectsBadLists) {
  EXPECT_THROW(sweep_n(std::vector<std::size_t>{}), DomainError);
  EXPECT_THROW(sweep_n(std::vector<std::size_t>{4, 2}), DomainError);
  EXPECT_THROW(sweep_n(std::vector<std::size_t>{1, 2}), DomainError);
}

TEST(Extrapolation, RecoversExactPowerLaw) {
  std::vector<SweepEntry> entries;
  for (std::size_t n : {4u, 8u, 16u, 32u}) {
    SweepEntry e;
    e.n = n;
    e.dimension = 0.99 - 0.4 * std::pow(static_cast<double>(n), -0.8);
    e.converged = true;
    entries.push_back(e);
  }
  const Extrapolation ex = extrapolate_limit(entries);
  ASSERT_TRUE(ex.valid);
  EXPECT_NEAR(ex.limit, 0.99, 1e-10);
  EXPECT_NEAR(ex.exponent, 0.8, 1e-8);
  EXPECT_NEAR(ex.scale, 0.4, 1e-8);
  EXPECT_NEAR(*ex.holdout_residual, 0.0, 1e-10);
  EXPECT_EQ(ex.used_n, (std::vector<std::size_t>{8, 16, 32}));
}

TEST(Extrapolation, SkipsNonConverged) {
  std::vector<SweepEntry> entries(3);
  for (std::size_t i = 0; i < 3; ++i) {
    entries[i].n = 2u << i;
    entries[i].dimension = 0.5 + 0.1 * static_cast<double>(i);
    entries[i].converged = i != 1;
  }
  EXPECT_FALSE(extrapolate_limit(entries).valid);
}

}  // namespace
}  // namespace dimmax
