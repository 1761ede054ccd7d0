#include "dimmax/transfer_operator.hpp"

#include <cmath>

#include "dimmax/error.hpp"

namespace dimmax {

TransferOperator::TransferOperator(const ProbVec& p, const OperatorDiscretization& disc)
    : TransferOperator(p, disc, 0.0) {}

TransferOperator::TransferOperator(const ProbVec& p, const OperatorDiscretization& disc,
                                   double t)
    : p_(p), disc_(disc), t_(t) {
  const std::size_t m = disc_.resolution();
  const auto nodes = disc_.nodes();
  matrix_.assign(m * m, 0.0);
  std::vector<double> row(m);
  for (std::size_t a = 0; a < m; ++a) {
    double* out = matrix_.data() + a * m;
    for (std::size_t k = 1; k <= p_.support_n(); ++k) {
      const Digit digit = static_cast<Digit>(k);
      if (p_.weight(digit) == 0.0) continue;
      const double g = branch_weight(digit, nodes[a]);
      disc_.interpolation_row(1.0 / (static_cast<double>(k) + nodes[a]), row);
      for (std::size_t b = 0; b < m; ++b) out[b] += g * row[b];
    }
  }
}

double TransferOperator::branch_weight(Digit k, double x) const {
  const double pk = p_.weight(k);
  if (t_ == 0.0) return pk;
  return pk * std::pow(static_cast<double>(k) + x, 2.0 * t_);
}

std::vector<double> TransferOperator::apply(std::span<const double> values) const {
  const std::size_t m = size();
  if (values.size() != m) throw DomainError("node vector has the wrong length");
  std::vector<double> out(m, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    const double* row = matrix_.data() + a * m;
    double acc = 0.0;
    for (std::size_t b = 0; b < m; ++b) acc += row[b] * values[b];
    out[a] = acc;
  }
  return out;
}

void TransferOperator::apply_in_place(std::vector<double>& values,
                                      std::vector<double>& scratch) const {
  const std::size_t m = size();
  scratch.resize(m);
  for (std::size_t a = 0; a < m; ++a) {
    const double* row = matrix_.data() + a * m;
    double acc = 0.0;
    for (std::size_t b = 0; b < m; ++b) acc += row[b] * values[b];
    scratch[a] = acc;
  }
  values.swap(scratch);
}

std::vector<double> TransferOperator::apply_exact(const std::function<double(double)>& w) const {
  return apply_branchwise([&w](Digit, double y) { return w(y); });
}

std::vector<double> TransferOperator::apply_branchwise(
    const std::function<double(Digit, double)>& w) const {
  const auto nodes = disc_.nodes();
  std::vector<double> out(nodes.size(), 0.0);
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= p_.support_n(); ++k) {
      const Digit digit = static_cast<Digit>(k);
      if (p_.weight(digit) == 0.0) continue;
      acc += branch_weight(digit, nodes[a]) *
             w(digit, 1.0 / (static_cast<double>(k) + nodes[a]));
    }
    out[a] = acc;
  }
  return out;
}

}  // namespace dimmax
