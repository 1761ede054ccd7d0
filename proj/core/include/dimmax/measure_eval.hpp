#pragma once

// Entropy, Lyapunov exponent and dimension of the Bernoulli measure mu_p
// pushed to [0, 1) by the continued fraction coding.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "dimmax/cf_kernel.hpp"
#include "dimmax/discretization.hpp"
#include "dimmax/prob_vec.hpp"
#include "dimmax/transfer_operator.hpp"

namespace dimmax {

inline constexpr double kCylinderBudget = 1e7;
inline constexpr std::size_t kDefaultOperatorIterations = 60;
inline constexpr std::size_t kMaxCylinderDepth = 30;

struct Estimate {
  double value = 0.0;
  double err = 0.0;  // half-width
};

struct CylinderMethod {
  std::size_t depth = 14;
};

struct OperatorMethod {
  std::size_t iterations = kDefaultOperatorIterations;
  OperatorDiscretization disc = OperatorDiscretization::chebyshev();
};

using EvalMethod = std::variant<CylinderMethod, OperatorMethod>;

// Deepest cylinder enumeration within kCylinderBudget if it reaches depth 12;
// the operator method with 60 iterations otherwise.
EvalMethod default_method(const ProbVec& p);

struct MethodTag {
  enum class Kind { cylinder, operator_iteration };
  Kind kind = Kind::cylinder;
  std::size_t depth = 0;       // cylinder
  std::size_t iterations = 0;  // operator
  std::size_t nodes = 0;       // operator
  OperatorDiscretization::Scheme scheme = OperatorDiscretization::Scheme::chebyshev;

  std::string describe() const;
};

struct EvalReport {
  double entropy = 0.0;
  double lyapunov = 0.0;
  double dimension = 0.0;
  double entropy_err = 0.0;
  double lyapunov_err = 0.0;
  MethodTag method;
  // Cylinder brackets are rigorous; operator errors are the empirical range
  // of the last iterate plus an interpolation estimate.
  bool rigorous = false;
};

// -sum p_k log p_k with 0 log 0 = 0.
double entropy(const ProbVec& p);

// p*_1 = p_1 + eps_n, p*_k = p_k for 2 <= k <= n, zero beyond.
// Throws DomainError for n < 2.
ProbVec truncate(const ProbVec& p, std::size_t n);
ProbVec truncate(const TailFamily& family, std::size_t n);

// Sum over words of length `depth` of p_word times the midpoint of the
// bracket of 2 log(1/x) on the word's cylinder; err is the weighted
// half-width, a rigorous bound since mu_p(cylinder) = p_word. Digits of zero
// weight are skipped, so the budget counts active digits only. Throws
// BudgetError if active^depth exceeds `budget`.
Estimate lyapunov_by_cylinders(const ProbVec& p, std::size_t depth,
                               double budget = kCylinderBudget);

// Same enumeration restricted to words starting with digit i: the integral
// of log|T'| over [i].
Estimate digit_integral_by_cylinders(const ProbVec& p, Digit i, std::size_t depth,
                                     double budget = kCylinderBudget);

// Iterates L_p `iterations` times on L phi(x) = sum_k p_k 2 log(k + x), the
// analytic first image of phi = log|T'|. Returns the midpoint of the final
// range over nodes; err is the half-range plus accumulated interpolation
// error. Throws ConvergenceError when the range stops shrinking above
// tolerance.
Estimate lyapunov_by_operator(const ProbVec& p, const OperatorDiscretization& disc,
                              std::size_t iterations = kDefaultOperatorIterations);

// I_i = integral of log|T'| over [i] = 2 p_i * integral of log(i + x) d mu_p,
// the last integral by operator iteration. Exactly 0 when p_i = 0.
double digit_integral(const ProbVec& p, Digit i, const OperatorDiscretization& disc,
                      std::size_t iterations = kDefaultOperatorIterations);

EvalReport dimension(const ProbVec& p, const EvalMethod& method);
EvalReport dimension(const ProbVec& p);

// The invariant measure of the discretized operator, solved directly.
//
// Holds the stationary functional nu (nu^T L = nu^T, sum nu = 1) so that
// integral w d mu_p ~ nu . w(nodes), plus the centered Poisson solution
// Psi = sum_{m >= 1} L^m (phi - lambda) that the Lyapunov gradient needs.
class EquilibriumState {
 public:
  EquilibriumState(const ProbVec& p, const OperatorDiscretization& disc);

  const ProbVec& weights() const noexcept { return op_.weights(); }
  const TransferOperator& transfer_operator() const noexcept { return op_; }
  const OperatorDiscretization& discretization() const noexcept {
    return op_.discretization();
  }

  std::span<const double> stationary() const noexcept { return nu_; }
  double integrate(std::span<const double> node_values) const;

  double lyapunov() const noexcept { return lyapunov_; }
  // Interpolation error estimate of L phi.
  double lyapunov_err() const noexcept { return lyapunov_err_; }

  // Integral of log(i + x) d mu_p.
  double log_shift_mean(Digit i) const;
  // I_i.
  double digit_integral(Digit i) const;
  // Integral of Psi(1/(i + x)) d mu_p.
  double poisson_branch_mean(Digit i) const;
  std::span<const double> poisson_solution() const noexcept { return poisson_; }

 private:
  TransferOperator op_;
  std::vector<double> nu_;
  std::vector<double> poisson_;
  double lyapunov_ = 0.0;
  double lyapunov_err_ = 0.0;
};

}  // namespace dimmax
