#pragma once

// Maximization of d(mu_p) = h / lambda over the simplices P_n.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dimmax/discretization.hpp"
#include "dimmax/gradient.hpp"
#include "dimmax/measure_eval.hpp"
#include "dimmax/prob_vec.hpp"

namespace dimmax {

enum class AscentMethod { exp_gradient, fixed_point };

const char* to_string(AscentMethod method);

struct OptimizeOptions {
  std::optional<ProbVec> init;
  double tol = 1e-10;  // on crit_residual
  std::size_t max_iter = 5000;
  AscentMethod method = AscentMethod::fixed_point;
  // fixed_point: p <- (1 - theta) p + theta q, q_i ~ exp(-d (I_i/p_i + J_i)).
  double damping = 0.5;
  // exp_gradient: p_i <- p_i exp(eta dd_i) / Z. 0 picks eta = h / (2 d).
  double step = 0.0;
  OperatorDiscretization disc = OperatorDiscretization::chebyshev();
};

struct OptState {
  ProbVec p = ProbVec::dirac(1);
  std::size_t iter = 0;
  std::vector<double> residual_history;
  double step = 0.0;
  AscentMethod method = AscentMethod::fixed_point;
};

struct OptimizeResult {
  ProbVec p = ProbVec::dirac(1);
  EvalReport report;
  GradReport grad;
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<double> residual_history;
  std::vector<double> dimension_history;
  AscentMethod method = AscentMethod::fixed_point;
};

// p_i proportional to i^{-1.9}.
ProbVec default_initial(std::size_t n);

// Runs the chosen ascent until crit_residual <= tol. Every accepted step
// increases d, or keeps it within rounding while lowering the residual; the
// step is halved until one of the two happens. On max_iter the best
// iterate is returned with converged = false. Throws DomainError for n < 2
// or a non-interior init, NumericError if an evaluator produces NaN.
OptimizeResult maximize_on_simplex(std::size_t n, const OptimizeOptions& options = {});

struct SweepEntry {
  std::size_t n = 0;
  ProbVec p = ProbVec::dirac(1);
  double dimension = 0.0;
  double residual = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

// d_n ~ limit - scale * n^{-exponent} through the three largest converged n.
struct Extrapolation {
  bool valid = false;
  double limit = 0.0;
  double scale = 0.0;
  double exponent = 0.0;
  std::vector<std::size_t> used_n;
  // |fit(n) - d_n| at the next smaller converged n, when there is one.
  std::optional<double> holdout_residual;
  std::string note;
};

struct SweepResult {
  std::vector<SweepEntry> per_n;
  double d_max = 0.0;
  // d_max, or the extrapolated limit when the fit is valid and larger.
  double D_estimate = 0.0;
  Extrapolation extrapolation;
};

// Pads `prev` (optimal on P_m) to n digits with p_k ~ k^{-2 d_prev}, scaled to
// continue p_m, and renormalizes.
ProbVec warm_start_from(const ProbVec& prev, double d_prev, std::size_t n);

Extrapolation extrapolate_limit(std::span<const SweepEntry> entries);

// n_list must be strictly increasing with every n >= 2. Non-converged
// entries are kept, flagged, and left out of the extrapolation.
SweepResult sweep_n(std::span<const std::size_t> n_list,
                    const OptimizeOptions& options = {}, bool warm_start = true);

}  // namespace dimmax
