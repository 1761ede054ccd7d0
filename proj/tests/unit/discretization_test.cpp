#include "dimmax/discretization.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "dimmax/error.hpp"

namespace dimmax {
namespace {

TEST(Discretization, ChebyshevNodes) {
  const auto disc = OperatorDiscretization::chebyshev(16);
  const auto x = disc.nodes();
  ASSERT_EQ(x.size(), 17u);
  EXPECT_DOUBLE_EQ(x.front(), 0.0);
  EXPECT_DOUBLE_EQ(x.back(), 1.0);
  for (std::size_t j = 1; j < x.size(); ++j) EXPECT_LT(x[j - 1], x[j]);
}

TEST(Discretization, RejectsTooFewNodes) {
  EXPECT_THROW(OperatorDiscretization::chebyshev(6), DomainError);
  EXPECT_THROW(OperatorDiscretization::uniform_grid(7), DomainError);
}

TEST(Discretization, ChebyshevInterpolatesAnalyticFunctions) {
  const auto disc = OperatorDiscretization::chebyshev(40);
  const auto f = [](double x) { return std::log(2.0 + x) + std::sin(3.0 * x); };
  const auto df = [](double x) { return 1.0 / (2.0 + x) + 3.0 * std::cos(3.0 * x); };
  const auto v = disc.sample(f);
  for (int s = 0; s <= 97; ++s) {
    const double y = s / 97.0;
    EXPECT_NEAR(disc.interpolate(v, y), f(y), 1e-14);
  }
  const auto dv = disc.derivative(v);
  for (std::size_t j = 0; j < dv.size(); ++j) {
    EXPECT_NEAR(dv[j], df(disc.nodes()[j]), 1e-11);
  }
  EXPECT_LT(disc.interpolation_error(v), 1e-14);
}

TEST(Discretization, RowsReproduceConstants) {
  const auto disc = OperatorDiscretization::chebyshev(32);
  std::vector<double> row(disc.resolution());
  for (const double y : {0.0, 0.123, 0.5, 0.77, 1.0}) {
    disc.interpolation_row(y, row);
    double sum = 0.0;
    for (const double r : row) sum += r;
    EXPECT_NEAR(sum, 1.0, 1e-14);
  }
  EXPECT_THROW(disc.interpolation_row(1.5, row), DomainError);
}

TEST(Discretization, UniformGridLinear) {
  const auto disc = OperatorDiscretization::uniform_grid(101);
  const auto v = disc.sample([](double x) { return 3.0 * x - 1.0; });
  EXPECT_NEAR(disc.interpolate(v, 0.3333), 3.0 * 0.3333 - 1.0, 1e-14);
  const auto q = disc.sample([](double x) { return x * x; });
  EXPECT_NEAR(disc.interpolation_error(q), 0.01 * 0.01 * 2.0 / 8.0, 1e-12);
  EXPECT_NEAR(disc.interpolate(q, 0.505), 0.505 * 0.505, 0.01 * 0.01 / 4.0 + 1e-15);
}

TEST(Discretization, ChebyshevCoefficients) {
  const auto disc = OperatorDiscretization::chebyshev(12);
  // T_2(2x - 1) = 2 (2x - 1)^2 - 1
  const auto v = disc.sample([](double x) { return 2.0 * (2.0 * x - 1.0) * (2.0 * x - 1.0) - 1.0; });
  const auto c = disc.chebyshev_coefficients(v);
  for (std::size_t k = 0; k < c.size(); ++k) {
    EXPECT_NEAR(c[k], k == 2 ? 1.0 : 0.0, 1e-14) << k;
  }
}

}  // namespace
}  // namespace dimmax
