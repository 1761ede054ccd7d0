#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dimmax/cf_kernel.hpp"
#include "dimmax/discretization.hpp"
#include "dimmax/prob_vec.hpp"

namespace dimmax {

// Discretization of (L w)(x) = sum_k g_k(x) w(1/(k + x)) with g_k(x) = p_k
// for the plain operator and g_k(x) = p_k (k + x)^{2t} for the operator
// weighted by t log|T'| used in the pressure probe.
//
// The matrix acts on node values; its rows are sum_k g_k(x_a) times the
// interpolation row at the preimage 1/(k + x_a). Preimages lie inside
// [1/(k+1), 1/k], so no extrapolation happens.
class TransferOperator {
 public:
  TransferOperator(const ProbVec& p, const OperatorDiscretization& disc);
  TransferOperator(const ProbVec& p, const OperatorDiscretization& disc,
                   double t);

  const OperatorDiscretization& discretization() const noexcept { return disc_; }
  const ProbVec& weights() const noexcept { return p_; }
  double exponent() const noexcept { return t_; }
  std::size_t size() const noexcept { return disc_.resolution(); }

  // Row-major dense matrix.
  std::span<const double> matrix() const noexcept { return matrix_; }

  std::vector<double> apply(std::span<const double> values) const;
  void apply_in_place(std::vector<double>& values, std::vector<double>& scratch) const;

  // Applies L to a function known everywhere, evaluating it at the exact
  // preimages instead of interpolating node values.
  std::vector<double> apply_exact(const std::function<double(double)>& w) const;
  // Same for a function given branch by branch: w(k, y) is the value at a
  // point y of the interval [k] = [1/(k+1), 1/k]. Lets indicator functions of
  // [k] be handled without interpolating a jump.
  std::vector<double> apply_branchwise(
      const std::function<double(Digit, double)>& w) const;

 private:
  double branch_weight(Digit k, double x) const;

  ProbVec p_;
  OperatorDiscretization disc_;
  double t_ = 0.0;
  std::vector<double> matrix_;
};

}  // namespace dimmax
