#pragma once

// Numerical checks of the transfer operator facts behind ergodicity of mu_p
// and of the pressure derivative identities.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dimmax/discretization.hpp"
#include "dimmax/prob_vec.hpp"

namespace dimmax {

// A test function on [0, 1], either smooth (value and optionally its
// derivative) or branchwise: value(k, y) for y in [k] = [1/(k+1), 1/k]. The
// branchwise form represents functions like the indicator of [i], which
// the diagnostics only ever see through their exact one-step image.
struct TestFunction {
  std::string label;
  std::function<double(double)> smooth;
  std::function<double(double)> derivative;  // optional, smooth only
  std::function<double(Digit, double)> branchwise;

  static TestFunction from_smooth(std::string label, std::function<double(double)> f,
                                  std::function<double(double)> df = {});
  static TestFunction from_branchwise(std::string label,
                                      std::function<double(Digit, double)> f);
  // chi_[i] - p_i.
  static TestFunction centered_indicator(const ProbVec& p, Digit i);

  bool is_smooth() const noexcept { return static_cast<bool>(smooth); }
};

// Random trigonometric polynomials a_0 + sum_{m <= M} a_m cos(2 pi m x) +
// b_m sin(2 pi m x) with M uniform in [1, max_degree] and standard normal
// coefficients. Deterministic in `seed`.
std::vector<TestFunction> trig_battery(std::size_t count, std::uint64_t seed,
                                       std::size_t max_degree = 3);

// (L w)(x) = sum_k p_k w(1/(k + x)) at the nodes, w given by node values.
std::vector<double> apply_operator(const ProbVec& p, std::span<const double> w,
                                   const OperatorDiscretization& disc);

struct ContractionEntry {
  std::string label;
  double derivative_sup = 0.0;  // ||(L^2 w)'||_inf on a dense grid
  double value_sup = 0.0;       // ||w||_inf
  double derivative_of_w_sup = 0.0;  // ||w'||_inf, 0 if unknown
  double ratio = 0.0;                // derivative_sup / value_sup
  double lipschitz_ratio = 0.0;      // derivative_sup / ||w'||_inf
};

struct ContractionReport {
  std::vector<ContractionEntry> entries;
  double max_ratio = 0.0;
  double max_lipschitz_ratio = 0.0;
  double slack = 0.0;
  // Indices with ratio > 0.25 + slack.
  std::vector<std::size_t> flagged;
  // Indices with lipschitz_ratio > 0.25 + slack.
  std::vector<std::size_t> lipschitz_flagged;
};

inline constexpr double kContractionBound = 0.25;
inline constexpr std::size_t kDenseGrid = 2001;

// For each smooth battery function: u = L w at the nodes (exact preimages),
// u' by differentiation of the interpolant, and
// (L^2 w)'(x) = -sum_k p_k u'(1/(k+x)) / (k+x)^2 on a dense grid.
ContractionReport contraction_check(const ProbVec& p, const OperatorDiscretization& disc,
                                    std::span<const TestFunction> battery);

struct CorrelationReport {
  // c_m = ||v - vbar||_inf ||L^m (w - wbar)||_inf for m = 1..m_max.
  std::vector<double> certificates;
  // integral (v - vbar) o T^m (w - wbar) d mu_p by explicit sums over the
  // n^m cylinders of length m, for m = 1..direct_depth.
  std::vector<double> direct;
  double v_mean = 0.0;
  double w_mean = 0.0;
  double v_sup = 0.0;
};

// Centers v and w with the operator-limit mean. Throws DomainError if v is
// not smooth, or if the centered w still has mean above 1e-12.
CorrelationReport correlation_decay(const ProbVec& p, const TestFunction& v,
                                    const TestFunction& w, std::size_t m_max,
                                    const OperatorDiscretization& disc,
                                    std::size_t direct_depth = 4);

struct PressureProbe {
  std::vector<double> t_grid;  // -2h, -h, 0, h, 2h
  std::vector<double> logs;    // P(t) = log of the leading eigenvalue of L_t
  double d1 = 0.0;             // Richardson-extrapolated central difference
  double d2 = 0.0;             // (P(h) - 2 P(0) + P(-h)) / h^2
  double step = 0.0;
};

// Leading eigenvalue of L_t w(x) = sum_k p_k (k+x)^{2t} w(1/(k+x)) by power
// iteration, stopping when successive estimates agree to 1e-15 relative.
// Throws ConvergenceError after max_iter iterations.
double leading_eigenvalue(const ProbVec& p, const OperatorDiscretization& disc,
                          double t, std::size_t max_iter = 2000);

PressureProbe pressure_probe(const ProbVec& p, const OperatorDiscretization& disc,
                             double step = 1e-3);

// Central difference of the probe's d1 along e_i - e_j with step delta:
// the mixed partial of the pressure, to compare with dlam_i - dlam_j.
double pressure_mixed_partial(const ProbVec& p, Digit i, Digit j,
                              const OperatorDiscretization& disc,
                              double delta = 1e-4, double step = 1e-3);

}  // namespace dimmax
