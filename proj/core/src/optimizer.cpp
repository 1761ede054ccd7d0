#include "dimmax/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dimmax/error.hpp"

namespace dimmax {

const char* to_string(AscentMethod method) {
  return method == AscentMethod::exp_gradient ? "exp_gradient" : "fixed_point";
}

ProbVec default_initial(std::size_t n) {
  if (n < 1) throw DomainError("alphabet must be nonempty");
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::pow(static_cast<double>(i + 1), -1.9);
  return ProbVec::normalized(std::move(w));
}

namespace {

constexpr double kAscentSlack = 1e-14;
constexpr int kMaxHalvings = 60;

struct Iterate {
  ProbVec p;
  GradReport grad;
};

Iterate evaluate(const ProbVec& p, const OperatorDiscretization& disc) {
  const EquilibriumState state(p, disc);
  GradReport g = grad_dimension(state);
  if (!std::isfinite(g.dimension) || !std::isfinite(g.crit_residual)) {
    std::ostringstream msg;
    msg << "optimizer: evaluator returned non-finite values (h=" << g.entropy
        << ", lambda=" << g.lyapunov << ")";
    throw NumericError(msg.str());
  }
  return {p, std::move(g)};
}

// Both updates are positive reweightings followed by normalization, so the
// iterate stays interior.
ProbVec propose(const Iterate& cur, AscentMethod method, double step) {
  const auto w = cur.p.weights();
  const std::size_t n = w.size();
  std::vector<double> next(n);
  if (method == AscentMethod::fixed_point) {
    // q_i ~ exp(-d (I_i/p_i + J_i)) = p_i exp(C_i + 1).
    const auto& C = cur.grad.criticality;
    const double top = *std::max_element(C.begin(), C.end());
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = w[i] * std::exp(C[i] - top);
      z += next[i];
    }
    for (std::size_t i = 0; i < n; ++i) next[i] = (1.0 - step) * w[i] + step * next[i] / z;
  } else {
    const auto& dd = cur.grad.dd;
    const double top = *std::max_element(dd.begin(), dd.end());
    for (std::size_t i = 0; i < n; ++i) next[i] = w[i] * std::exp(step * (dd[i] - top));
  }
  return ProbVec::normalized(std::move(next));
}

}  // namespace

OptimizeResult maximize_on_simplex(std::size_t n, const OptimizeOptions& options) {
  if (n < 2) throw DomainError("maximize_on_simplex needs n >= 2");
  if (!(options.tol > 0.0)) throw DomainError("tolerance must be positive");
  ProbVec start = options.init ? *options.init : default_initial(n);
  if (start.support_n() != n) throw DomainError("initial vector has the wrong length");
  if (!start.interior()) throw DomainError("initial vector must be interior");

  OptState state{start, 0, {}, 0.0, options.method};
  Iterate cur = evaluate(start, options.disc);
  const double base_step = options.method == AscentMethod::fixed_point
                               ? options.damping
                               : (options.step > 0.0 ? options.step
                                                     : 0.5 * cur.grad.entropy / cur.grad.dimension);
  if (!(base_step > 0.0)) throw DomainError("step size must be positive");
  state.step = base_step;

  OptimizeResult result{start, {}, {}, false, 0, {}, {}, options.method};
  result.dimension_history.push_back(cur.grad.dimension);
  state.residual_history.push_back(cur.grad.crit_residual);

  bool stalled = false;
  while (cur.grad.crit_residual > options.tol && state.iter < options.max_iter && !stalled) {
    int halvings = 0;
    for (;;) {
      Iterate cand = evaluate(propose(cur, state.method, state.step), options.disc);
      // Near the optimum d moves by less than rounding, so a flat step only
      // counts if it also lowers the residual.
      const bool rises = cand.grad.dimension > cur.grad.dimension;
      const bool flat_but_better = cand.grad.dimension >= cur.grad.dimension - kAscentSlack &&
                                   cand.grad.crit_residual < cur.grad.crit_residual;
      if (rises || flat_but_better) {
        cur = std::move(cand);
        break;
      }
      state.step *= 0.5;
      if (++halvings > kMaxHalvings) {
        stalled = true;
        break;
      }
    }
    if (stalled) break;
    ++state.iter;
    state.residual_history.push_back(cur.grad.crit_residual);
    result.dimension_history.push_back(cur.grad.dimension);
    state.step = std::min(base_step, 2.0 * state.step);
  }

  result.p = cur.p;
  result.converged = cur.grad.crit_residual <= options.tol;
  result.iterations = state.iter;
  result.residual_history = std::move(state.residual_history);
  result.grad = std::move(cur.grad);
  result.report = dimension(result.p, OperatorMethod{kDefaultOperatorIterations, options.disc});
  return result;
}

ProbVec warm_start_from(const ProbVec& prev, double d_prev, std::size_t n) {
  const std::size_t m = prev.support_n();
  if (n <= m) throw DomainError("warm start must enlarge the alphabet");
  if (!prev.interior()) throw DomainError("warm start needs an interior vector");
  std::vector<double> w(prev.weights().begin(), prev.weights().end());
  const double scale = w.back() * std::pow(static_cast<double>(m), 2.0 * d_prev);
  for (std::size_t k = m + 1; k <= n; ++k) {
    w.push_back(scale * std::pow(static_cast<double>(k), -2.0 * d_prev));
  }
  return ProbVec::normalized(std::move(w));
}

Extrapolation extrapolate_limit(std::span<const SweepEntry> entries) {
  Extrapolation ex;
  std::vector<const SweepEntry*> ok;
  for (const auto& e : entries) {
    if (e.converged) ok.push_back(&e);
  }
  if (ok.size() < 3) {
    ex.note = "fewer than three converged n; no extrapolation";
    return ex;
  }
  const auto& a = *ok[ok.size() - 3];
  const auto& b = *ok[ok.size() - 2];
  const auto& c = *ok[ok.size() - 1];
  ex.used_n = {a.n, b.n, c.n};
  const double n1 = static_cast<double>(a.n);
  const double n2 = static_cast<double>(b.n);
  const double n3 = static_cast<double>(c.n);
  const double g1 = b.dimension - a.dimension;
  const double g2 = c.dimension - b.dimension;
  if (!(g1 > 0.0) || !(g2 > 0.0)) {
    ex.note = "d_n not strictly increasing over the last three n";
    return ex;
  }
  const double target = g2 / g1;
  auto ratio = [&](double beta) {
    return (std::pow(n2, -beta) - std::pow(n3, -beta)) /
           (std::pow(n1, -beta) - std::pow(n2, -beta));
  };
  // ratio decreases from log(n3/n2)/log(n2/n1) at beta -> 0 towards 0.
  double lo = 1e-8;
  double hi = 50.0;
  if (!(target < ratio(lo)) || !(target > ratio(hi))) {
    ex.note = "increments do not match a power-law correction";
    return ex;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) > target ? lo : hi) = mid;
  }
  ex.exponent = 0.5 * (lo + hi);
  ex.scale = g1 / (std::pow(n1, -ex.exponent) - std::pow(n2, -ex.exponent));
  ex.limit = c.dimension + ex.scale * std::pow(n3, -ex.exponent);
  ex.valid = ex.scale > 0.0 && ex.exponent > 0.0 && std::isfinite(ex.limit);
  if (ok.size() >= 4) {
    const auto& h = *ok[ok.size() - 4];
    ex.holdout_residual = std::abs(ex.limit - ex.scale * std::pow(static_cast<double>(h.n), -ex.exponent) -
                                   h.dimension);
  }
  std::ostringstream note;
  note << "d_n ~ D - c n^-beta through n = " << a.n << ", " << b.n << ", " << c.n;
  ex.note = note.str();
  return ex;
}

SweepResult sweep_n(std::span<const std::size_t> n_list, const OptimizeOptions& options,
                    bool warm_start) {
  if (n_list.empty()) throw DomainError("sweep needs at least one n");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 2) throw DomainError("sweep values must be >= 2");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw DomainError("sweep values must increase");
  }
  SweepResult out;
  out.per_n.reserve(n_list.size());
  const SweepEntry* prev = nullptr;
  for (std::size_t n : n_list) {
    OptimizeOptions opt = options;
    opt.init.reset();
    if (warm_start && prev != nullptr && prev->converged) {
      opt.init = warm_start_from(prev->p, prev->dimension, n);
    }
    OptimizeResult r = maximize_on_simplex(n, opt);
    out.per_n.push_back(
        {n, r.p, r.grad.dimension, r.grad.crit_residual, r.converged, r.iterations});
    prev = &out.per_n.back();
  }
  for (const auto& e : out.per_n) {
    if (e.converged) out.d_max = std::max(out.d_max, e.dimension);
  }
  out.extrapolation = extrapolate_limit(out.per_n);
  out.D_estimate = out.extrapolation.valid ? std::max(out.d_max, out.extrapolation.limit)
                                           : out.d_max;
  return out;
}

}  // namespace dimmax
