#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dimmax {

// Node-based representation of functions on [0, 1].
//
// chebyshev(N) uses the N + 1 Chebyshev-Lobatto points mapped to [0, 1] with
// barycentric interpolation; uniform_grid(N) uses N equispaced nodes with
// piecewise linear interpolation. Nodes are sorted ascending and include
// both endpoints.
class OperatorDiscretization {
 public:
  enum class Scheme { chebyshev, uniform_grid };

  static constexpr std::size_t kMinNodes = 8;
  static constexpr std::size_t kDefaultDegree = 64;

  static OperatorDiscretization chebyshev(std::size_t degree = kDefaultDegree);
  static OperatorDiscretization uniform_grid(std::size_t nodes);

  Scheme scheme() const noexcept { return scheme_; }
  std::size_t resolution() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }

  std::vector<double> sample(const std::function<double(double)>& f) const;

  // Interpolation weights for evaluating at y: value(y) = row . values.
  // `row` must have resolution() entries.
  void interpolation_row(double y, std::span<double> row) const;
  double interpolate(std::span<const double> values, double y) const;

  // Derivative values at the nodes (spectral differentiation for chebyshev,
  // second-order differences for the grid).
  std::vector<double> derivative(std::span<const double> values) const;

  // Heuristic bound on the interpolation error of `values` on [0, 1]:
  // the size of the trailing Chebyshev coefficients, or h^2/8 times the
  // largest second difference quotient on the grid.
  double interpolation_error(std::span<const double> values) const;

  // Chebyshev coefficients of the interpolant (chebyshev scheme only).
  std::vector<double> chebyshev_coefficients(std::span<const double> values) const;

 private:
  OperatorDiscretization(Scheme scheme, std::vector<double> nodes,
                         std::vector<double> bary);

  Scheme scheme_;
  std::vector<double> nodes_;
  std::vector<double> bary_;  // barycentric weights (chebyshev only)
};

}  // namespace dimmax
