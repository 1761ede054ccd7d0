#include "dimmax/gradient.hpp"

#include <algorithm>
#include <cmath>

#include "dimmax/error.hpp"

namespace dimmax {

double spread(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

std::vector<double> grad_entropy(const ProbVec& p) {
  if (!p.interior()) {
    throw DomainError("entropy gradient is unbounded on the boundary of the simplex");
  }
  std::vector<double> out(p.support_n());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -(std::log(p.weights()[i]) + 1.0);
  return out;
}

LyapunovGradient grad_lyapunov(const EquilibriumState& state) {
  const ProbVec& p = state.weights();
  if (!p.interior()) {
    throw DomainError("Lyapunov gradient is only defined on the interior of the simplex");
  }
  const std::size_t n = p.support_n();
  LyapunovGradient g;
  g.lyapunov = state.lyapunov();
  g.dlam.resize(n);
  g.leading.resize(n);
  g.correction.resize(n);
  g.digit_integrals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Digit digit = static_cast<Digit>(i + 1);
    const double pi = p.weights()[i];
    g.digit_integrals[i] = state.digit_integral(digit);
    g.leading[i] = g.digit_integrals[i] / pi - g.lyapunov;
    g.correction[i] = state.poisson_branch_mean(digit);
    g.dlam[i] = g.leading[i] + g.correction[i];
  }
  return g;
}

LyapunovGradient grad_lyapunov(const ProbVec& p, const OperatorDiscretization& disc) {
  if (!p.interior()) {
    throw DomainError("Lyapunov gradient is only defined on the interior of the simplex");
  }
  return grad_lyapunov(EquilibriumState(p, disc));
}

GradReport grad_dimension(const EquilibriumState& state) {
  const ProbVec& p = state.weights();
  GradReport r;
  r.dh = grad_entropy(p);
  r.entropy = entropy(p);
  if (!(r.entropy > 0.0)) {
    throw DomainError("dimension gradient is undefined at a Dirac vector (h = 0)");
  }
  auto lg = grad_lyapunov(state);
  r.lyapunov = lg.lyapunov;
  r.dimension = r.entropy / r.lyapunov;
  r.dlam = std::move(lg.dlam);
  r.dlam_leading = std::move(lg.leading);
  r.dlam_correction = std::move(lg.correction);
  r.digit_integrals = std::move(lg.digit_integrals);

  const std::size_t n = p.support_n();
  r.dd.resize(n);
  r.criticality.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.dd[i] = r.dimension * (r.dh[i] / r.entropy - r.dlam[i] / r.lyapunov);
    // -(log p_i + 1) - d (I_i/p_i + J_i); equals (h/d) dd_i minus d lambda.
    r.criticality[i] = r.dh[i] - r.dimension * (r.dlam[i] + r.lyapunov);
    if (!std::isfinite(r.dd[i]) || !std::isfinite(r.criticality[i])) {
      throw NumericError("grad_dimension: non-finite gradient component");
    }
  }
  r.crit_residual = spread(r.criticality);
  return r;
}

GradReport grad_dimension(const ProbVec& p, const OperatorDiscretization& disc) {
  if (!p.interior()) {
    throw DomainError("dimension gradient is only defined on the interior of the simplex");
  }
  return grad_dimension(EquilibriumState(p, disc));
}

}  // namespace dimmax
