#include "dimmax/operator_diagnostics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dimmax/error.hpp"
#include "dimmax/gradient.hpp"
#include "dimmax/measure_eval.hpp"
#include "oracles.hpp"

namespace dimmax {
namespace {

const OperatorDiscretization kDisc = OperatorDiscretization::chebyshev();

TEST(ApplyOperator, StochasticOnConstants) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const ProbVec p = oracle::random_interior(1 + trial % 9, rng, 0.0);
    const std::vector<double> one(kDisc.resolution(), 1.0);
    for (double v : apply_operator(p, one, kDisc)) EXPECT_NEAR(v, 1.0, 1e-12);
  }
}

TEST(ApplyOperator, PositivityAndSupNorm) {
  const ProbVec p({0.4, 0.3, 0.2, 0.1});
  for (const auto& f : trig_battery(20, 4)) {
    const auto w = kDisc.sample(f.smooth);
    const auto lw = apply_operator(p, w, kDisc);
    double sw = 0.0;
    double slw = 0.0;
    for (double x : w) sw = std::max(sw, std::abs(x));
    for (double x : lw) slw = std::max(slw, std::abs(x));
    EXPECT_LE(slw, sw * (1.0 + 1e-12));
  }
  const auto sq = kDisc.sample([](double x) { return (x - 0.3) * (x - 0.3); });
  for (double v : apply_operator(p, sq, kDisc)) EXPECT_GE(v, 0.0);
}

TEST(ApplyOperator, CenteredIndicatorVanishes) {
  const ProbVec p({0.5, 0.3, 0.2});
  const TransferOperator op(p, kDisc);
  for (Digit i = 1; i <= 3; ++i) {
    const auto f = TestFunction::centered_indicator(p, i);
    for (double v : op.apply_branchwise(f.branchwise)) EXPECT_NEAR(v, 0.0, 1e-15);
  }
}

TEST(Contraction, ConstantsAndIdentity) {
  const ProbVec p({0.5, 0.5});
  const std::vector<TestFunction> battery{
      TestFunction::from_smooth("one", [](double) { return 1.0; }, [](double) { return 0.0; }),
      TestFunction::from_smooth("x", [](double x) { return x; }, [](double) { return 1.0; })};
  const ContractionReport r = contraction_check(p, kDisc, battery);
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_LT(r.entries[0].ratio, 1e-12);
  EXPECT_LE(r.entries[1].ratio, 0.25);
  EXPECT_LE(r.entries[1].lipschitz_ratio, 0.25);
  EXPECT_LT(r.slack, 1e-6);
}

// Against the sup norm of w the bound fails for oscillating w: the ratio
// compares a derivative with a value. Against the sup norm of w' (the
// Lipschitz form) it holds with a wide margin.
TEST(Contraction, TrigBattery) {
  const ProbVec p({0.5, 0.5});
  const auto battery = trig_battery(20, 123);
  const ContractionReport r = contraction_check(p, kDisc, battery);
  EXPECT_EQ(r.entries.size(), 20u);
  EXPECT_TRUE(r.lipschitz_flagged.empty());
  EXPECT_LT(r.max_lipschitz_ratio, 0.25);
  EXPECT_GT(r.max_ratio, 0.25);
  EXPECT_FALSE(r.flagged.empty());
}

TEST(Contraction, DerivativeAgreesWithFiniteDifferences) {
  const ProbVec p({0.6, 0.4});
  const auto w = [](double x) { return std::cos(5.0 * x); };
  const TransferOperator op(p, kDisc);
  // L^2 w evaluated directly at a point.
  const auto l2w = [&](double x) {
    double acc = 0.0;
    for (Digit a = 1; a <= 2; ++a) {
      for (Digit b = 1; b <= 2; ++b) {
        acc += p.weight(a) * p.weight(b) * w(1.0 / (b + 1.0 / (a + x)));
      }
    }
    return acc;
  };
  double fd_sup = 0.0;
  for (int j = 0; j <= 2000; ++j) {
    const double x = j / 2000.0;
    const double h = 1e-4;
    double fd = 0.0;
    if (j == 0) {
      fd = (-3 * l2w(x) + 4 * l2w(x + h) - l2w(x + 2 * h)) / (2 * h);
    } else if (j == 2000) {
      fd = (3 * l2w(x) - 4 * l2w(x - h) + l2w(x - 2 * h)) / (2 * h);
    } else {
      fd = (l2w(x + h) - l2w(x - h)) / (2 * h);
    }
    fd_sup = std::max(fd_sup, std::abs(fd));
  }
  const std::vector<TestFunction> battery{TestFunction::from_smooth("cos5", w)};
  const ContractionReport r = contraction_check(p, kDisc, battery);
  EXPECT_NEAR(r.entries[0].derivative_sup, fd_sup, 1e-7);
}

TEST(Correlation, IndicatorSeriesVanishes) {
  const ProbVec p({0.5, 0.3, 0.2});
  const auto v = TestFunction::from_smooth("x", [](double x) { return x; });
  const auto r = correlation_decay(p, v, TestFunction::centered_indicator(p, 2), 10, kDisc);
  EXPECT_NEAR(r.w_mean, 0.0, 1e-15);
  for (double c : r.certificates) EXPECT_LT(c, 1e-14);
  for (double c : r.direct) EXPECT_NEAR(c, 0.0, 1e-14);
}

TEST(Correlation, GenericDecay) {
  const ProbVec p({0.3, 0.25, 0.2, 0.15, 0.1});
  const auto v = TestFunction::from_smooth("sin", [](double x) { return std::sin(3 * x); });
  const auto w = TestFunction::from_smooth("exp", [](double x) { return std::exp(x); });
  const auto r = correlation_decay(p, v, w, 40, kDisc);
  ASSERT_EQ(r.certificates.size(), 40u);
  for (std::size_t m = 2; m < r.certificates.size(); ++m) {
    EXPECT_LE(r.certificates[m], r.certificates[m - 1] + 1e-12);
  }
  EXPECT_LT(r.certificates.back(), 1e-6);
  ASSERT_FALSE(r.direct.empty());
  for (std::size_t m = 0; m < r.direct.size(); ++m) {
    EXPECT_LE(std::abs(r.direct[m]), r.certificates[m] + 1e-12);
  }
}

TEST(Correlation, ConstantsGiveZero) {
  const ProbVec p({0.6, 0.4});
  const auto c = TestFunction::from_smooth("c", [](double) { return 2.5; });
  const auto w = TestFunction::from_smooth("x2", [](double x) { return x * x; });
  const auto r1 = correlation_decay(p, c, w, 5, kDisc);
  for (double x : r1.certificates) EXPECT_LT(x, 1e-13);
  for (double x : r1.direct) EXPECT_NEAR(x, 0.0, 1e-14);
  const auto r2 = correlation_decay(p, w, c, 5, kDisc);
  for (double x : r2.certificates) EXPECT_LT(x, 1e-13);
}

TEST(Correlation, DirectSumMatchesOperatorAtDepthOne) {
  const ProbVec p({0.7, 0.3});
  const auto v = TestFunction::from_smooth("x", [](double x) { return x; });
  const auto w = TestFunction::from_smooth("x3", [](double x) { return x * x * x; });
  const auto r = correlation_decay(p, v, w, 3, kDisc, 3);
  const EquilibriumState s(p, kDisc);
  const TransferOperator& op = s.transfer_operator();
  auto lw = op.apply_exact([&](double x) { return w.smooth(x) - r.w_mean; });
  for (std::size_t m = 1; m <= 3; ++m) {
    if (m > 1) lw = op.apply(lw);
    const auto vb = kDisc.sample([&](double x) { return v.smooth(x) - r.v_mean; });
    std::vector<double> prod(vb.size());
    for (std::size_t a = 0; a < vb.size(); ++a) prod[a] = vb[a] * lw[a];
    EXPECT_NEAR(r.direct[m - 1], s.integrate(prod), 1e-12);
  }
}

TEST(Pressure, ZeroAtOriginAndEigenvalueOne) {
  const ProbVec p({0.5, 0.5});
  EXPECT_NEAR(leading_eigenvalue(p, kDisc, 0.0), 1.0, 1e-10);
  const PressureProbe probe = pressure_probe(p, kDisc);
  EXPECT_NEAR(probe.logs[2], 0.0, 1e-12);
  EXPECT_GE(probe.d2, 0.0);
  EXPECT_NEAR(probe.d1, lyapunov_by_operator(p, kDisc).value, 1e-6);
}

TEST(Pressure, MixedPartialMatchesLyapunovGradient) {
  const ProbVec p({0.45, 0.35, 0.2});
  const auto g = grad_lyapunov(p, kDisc);
  EXPECT_NEAR(pressure_mixed_partial(p, 1, 3, kDisc), g.dlam[0] - g.dlam[2], 1e-4);
  EXPECT_NEAR(pressure_mixed_partial(p, 2, 1, kDisc), g.dlam[1] - g.dlam[0], 1e-4);
  EXPECT_THROW(pressure_mixed_partial(p, 1, 1, kDisc), DomainError);
}

TEST(Pressure, CrossModuleClosure) {
  const ProbVec p({0.5, 0.3, 0.2});
  const PressureProbe probe = pressure_probe(p, kDisc);
  const Estimate op = lyapunov_by_operator(p, kDisc);
  const Estimate cyl = lyapunov_by_cylinders(p, 13);
  EXPECT_NEAR(probe.d1, op.value, 1e-6 + op.err);
  EXPECT_NEAR(probe.d1, cyl.value, 1e-6 + cyl.err);
  EXPECT_NEAR(op.value, cyl.value, op.err + cyl.err);
}

}  // namespace
}  // namespace dimmax
