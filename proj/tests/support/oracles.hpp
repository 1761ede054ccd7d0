#pragma once

// Test-only reference computations. Nothing here calls the gradient,
// criticality or optimizer code it is used to check.

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include "dimmax/prob_vec.hpp"

namespace dimmax::oracle {

// Random interior probability vector with weights bounded away from 0.
inline ProbVec random_interior(std::size_t n, std::mt19937_64& rng, double floor = 0.02) {
  std::uniform_real_distribution<double> u(floor, 1.0);
  std::vector<double> w(n);
  for (double& x : w) x = u(rng);
  return ProbVec::normalized(std::move(w));
}

inline ProbVec shifted(const ProbVec& p, std::size_t i, std::size_t j, double delta) {
  std::vector<double> w(p.weights().begin(), p.weights().end());
  w[i] += delta;
  w[j] -= delta;
  return ProbVec(std::move(w));
}

// Derivative of f along e_i - e_j (0-based), central differences with one
// Richardson step: (4 D(h/2) - D(h)) / 3.
inline double tangent_derivative(const std::function<double(const ProbVec&)>& f,
                                 const ProbVec& p, std::size_t i, std::size_t j,
                                 double h = 1e-5) {
  auto central = [&](double step) {
    return (f(shifted(p, i, j, step)) - f(shifted(p, i, j, -step))) / (2.0 * step);
  };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

struct Maximum {
  double x = 0.0;
  double value = 0.0;
};

// Dense grid scan followed by golden-section refinement around the best
// grid point. Assumes f is unimodal near that point.
inline Maximum grid_golden_max(const std::function<double(double)>& f, double lo, double hi,
                               std::size_t grid = 400, double xtol = 1e-10) {
  std::size_t best = 0;
  double best_val = -INFINITY;
  const double h = (hi - lo) / static_cast<double>(grid);
  for (std::size_t g = 0; g <= grid; ++g) {
    const double v = f(lo + h * static_cast<double>(g));
    if (v > best_val) {
      best_val = v;
      best = g;
    }
  }
  double a = lo + h * static_cast<double>(best == 0 ? 0 : best - 1);
  double b = lo + h * static_cast<double>(best == grid ? grid : best + 1);
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > xtol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

// First `count` digits of x by iterating 1/x mod 1 directly.
inline std::vector<std::uint32_t> gauss_digits(double x, std::size_t count) {
  std::vector<std::uint32_t> out;
  for (std::size_t k = 0; k < count && x > 0.0; ++k) {
    const double y = 1.0 / x;
    out.push_back(static_cast<std::uint32_t>(std::floor(y)));
    x = y - std::floor(y);
  }
  return out;
}

}  // namespace dimmax::oracle
