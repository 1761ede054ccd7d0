#include "dimmax/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dimmax/error.hpp"

namespace dimmax {

OperatorDiscretization::OperatorDiscretization(Scheme scheme, std::vector<double> nodes,
                                               std::vector<double> bary)
    : scheme_(scheme), nodes_(std::move(nodes)), bary_(std::move(bary)) {}

OperatorDiscretization OperatorDiscretization::chebyshev(std::size_t degree) {
  if (degree + 1 < kMinNodes) {
    throw DomainError("chebyshev discretization needs degree >= " +
                      std::to_string(kMinNodes - 1));
  }
  const std::size_t n = degree;
  std::vector<double> nodes(n + 1);
  std::vector<double> bary(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    // (1 - cos(pi j / n)) / 2 without cancellation near 0.
    const double s = std::sin(std::numbers::pi * static_cast<double>(j) /
                              (2.0 * static_cast<double>(n)));
    nodes[j] = s * s;
    bary[j] = (j % 2 == 0) ? 1.0 : -1.0;
  }
  nodes[n] = 1.0;
  bary[0] *= 0.5;
  bary[n] *= 0.5;
  return OperatorDiscretization(Scheme::chebyshev, std::move(nodes), std::move(bary));
}

OperatorDiscretization OperatorDiscretization::uniform_grid(std::size_t count) {
  if (count < kMinNodes) {
    throw DomainError("uniform grid needs at least " + std::to_string(kMinNodes) + " nodes");
  }
  std::vector<double> nodes(count);
  for (std::size_t j = 0; j < count; ++j) {
    nodes[j] = static_cast<double>(j) / static_cast<double>(count - 1);
  }
  return OperatorDiscretization(Scheme::uniform_grid, std::move(nodes), {});
}

std::vector<double> OperatorDiscretization::sample(const std::function<double(double)>& f) const {
  std::vector<double> out(nodes_.size());
  std::transform(nodes_.begin(), nodes_.end(), out.begin(), f);
  return out;
}

void OperatorDiscretization::interpolation_row(double y, std::span<double> row) const {
  const std::size_t n = nodes_.size();
  if (row.size() != n) throw DomainError("interpolation row has the wrong length");
  if (!(y >= 0.0 && y <= 1.0)) {
    throw DomainError("interpolation point outside [0, 1]: " + std::to_string(y));
  }
  std::fill(row.begin(), row.end(), 0.0);

  if (scheme_ == Scheme::uniform_grid) {
    const double h = 1.0 / static_cast<double>(n - 1);
    const std::size_t cell = std::min(static_cast<std::size_t>(y / h), n - 2);
    const double t = (y - nodes_[cell]) / h;
    row[cell] = 1.0 - t;
    row[cell + 1] = t;
    return;
  }

  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double diff = y - nodes_[j];
    if (diff == 0.0) {
      std::fill(row.begin(), row.end(), 0.0);
      row[j] = 1.0;
      return;
    }
    row[j] = bary_[j] / diff;
    total += row[j];
  }
  for (double& r : row) r /= total;
}

double OperatorDiscretization::interpolate(std::span<const double> values, double y) const {
  std::vector<double> row(nodes_.size());
  interpolation_row(y, row);
  double acc = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * values[j];
  return acc;
}

std::vector<double> OperatorDiscretization::derivative(std::span<const double> values) const {
  const std::size_t n = nodes_.size();
  std::vector<double> out(n, 0.0);
  if (scheme_ == Scheme::uniform_grid) {
    const double h = 1.0 / static_cast<double>(n - 1);
    for (std::size_t j = 1; j + 1 < n; ++j) out[j] = (values[j + 1] - values[j - 1]) / (2 * h);
    out[0] = (-3 * values[0] + 4 * values[1] - values[2]) / (2 * h);
    out[n - 1] = (3 * values[n - 1] - 4 * values[n - 2] + values[n - 3]) / (2 * h);
    return out;
  }
  // Barycentric differentiation matrix: D_ij = (w_j / w_i) / (x_i - x_j),
  // D_ii = -sum_{j != i} D_ij.
  for (std::size_t i = 0; i < n; ++i) {
    double diag = 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = (bary_[j] / bary_[i]) / (nodes_[i] - nodes_[j]);
      diag -= d;
      acc += d * values[j];
    }
    out[i] = acc + diag * values[i];
  }
  return out;
}

std::vector<double> OperatorDiscretization::chebyshev_coefficients(
    std::span<const double> values) const {
  if (scheme_ != Scheme::chebyshev) {
    throw DomainError("chebyshev coefficients need the chebyshev scheme");
  }
  // Node j sits at t_j = 1 - 2 x_j = cos(pi j / N).
  const std::size_t N = nodes_.size() - 1;
  std::vector<double> c(N + 1, 0.0);
  for (std::size_t k = 0; k <= N; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= N; ++j) {
      const double f = (j == 0 || j == N) ? 0.5 * values[j] : values[j];
      acc += f * std::cos(std::numbers::pi * static_cast<double>(j * k % (2 * N)) /
                          static_cast<double>(N));
    }
    c[k] = 2.0 * acc / static_cast<double>(N);
  }
  c[0] *= 0.5;
  c[N] *= 0.5;
  return c;
}

double OperatorDiscretization::interpolation_error(std::span<const double> values) const {
  if (scheme_ == Scheme::chebyshev) {
    const auto c = chebyshev_coefficients(values);
    const std::size_t N = c.size() - 1;
    double tail = 0.0;
    for (std::size_t k = std::min(3 * N / 4, N - 1); k <= N; ++k) tail += std::abs(c[k]);
    return tail;
  }
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < values.size(); ++j) {
    worst = std::max(worst, std::abs(values[j + 1] - 2 * values[j] + values[j - 1]));
  }
  return worst / 8.0;
}

}  // namespace dimmax
