#pragma once

// First derivatives of entropy, Lyapunov exponent and dimension with
// respect to the weights p_1, ..., p_n.
//
// Coordinates are those of the unconstrained extension of h and lambda to a
// neighbourhood of the simplex. Only differences dX_i - dX_j (derivatives
// along e_i - e_j) are intrinsic to the simplex.
//
// The Lyapunov derivative is the Green-Kubo sum
//
//   dlam_i = sum_{m >= 0} integral (L^m phibar)(1/(i + x)) d mu_p
//          = [I_i / p_i - lambda] + integral Psi(1/(i + x)) d mu_p,
//
// phibar = log|T'| - lambda, Psi = sum_{m >= 1} L^m phibar. The bracketed
// m = 0 term alone (`dlam_leading`) misses the correlations between
// log|T'| and later digits and disagrees with finite differences; the
// second term (`dlam_correction`) restores them.

#include <span>
#include <vector>

#include "dimmax/discretization.hpp"
#include "dimmax/measure_eval.hpp"
#include "dimmax/prob_vec.hpp"

namespace dimmax {

struct GradReport {
  double entropy = 0.0;
  double lyapunov = 0.0;
  double dimension = 0.0;

  std::vector<double> dh;
  std::vector<double> dlam;
  std::vector<double> dlam_leading;
  std::vector<double> dlam_correction;
  std::vector<double> dd;
  std::vector<double> digit_integrals;  // I_i

  // C_i = -(log p_i + 1) - d (I_i / p_i + correction_i). Equal C_i on the
  // support is equivalent to dd_i = dd_j for all i, j.
  std::vector<double> criticality;
  double crit_residual = 0.0;  // max_i C_i - min_i C_i
};

// -(log p_i + 1). Throws DomainError if some p_i on the support is 0.
std::vector<double> grad_entropy(const ProbVec& p);

struct LyapunovGradient {
  double lyapunov = 0.0;
  std::vector<double> dlam;
  std::vector<double> leading;
  std::vector<double> correction;
  std::vector<double> digit_integrals;
};

LyapunovGradient grad_lyapunov(const EquilibriumState& state);
LyapunovGradient grad_lyapunov(
    const ProbVec& p,
    const OperatorDiscretization& disc = OperatorDiscretization::chebyshev());

// Throws DomainError at boundary points and when h = 0.
GradReport grad_dimension(const EquilibriumState& state);
GradReport grad_dimension(
    const ProbVec& p,
    const OperatorDiscretization& disc = OperatorDiscretization::chebyshev());

// Spread max - min of the values.
double spread(std::span<const double> values);

}  // namespace dimmax
