#include "dimmax/operator_diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dimmax/error.hpp"
#include "dimmax/measure_eval.hpp"
#include "dimmax/transfer_operator.hpp"

namespace dimmax {

TestFunction TestFunction::from_smooth(std::string label, std::function<double(double)> f,
                                       std::function<double(double)> df) {
  TestFunction t;
  t.label = std::move(label);
  t.smooth = std::move(f);
  t.derivative = std::move(df);
  return t;
}

TestFunction TestFunction::from_branchwise(std::string label,
                                           std::function<double(Digit, double)> f) {
  TestFunction t;
  t.label = std::move(label);
  t.branchwise = std::move(f);
  return t;
}

TestFunction TestFunction::centered_indicator(const ProbVec& p, Digit i) {
  const double pi = p.weight(i);
  std::ostringstream label;
  label << "chi_[" << i << "] - p_" << i;
  return from_branchwise(label.str(),
                         [i, pi](Digit k, double) { return (k == i ? 1.0 : 0.0) - pi; });
}

std::vector<TestFunction> trig_battery(std::size_t count, std::uint64_t seed,
                                       std::size_t max_degree) {
  if (max_degree < 1) throw DomainError("trig battery needs degree >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> degree(1, max_degree);
  std::normal_distribution<double> coef(0.0, 1.0);
  std::vector<TestFunction> out;
  out.reserve(count);
  for (std::size_t f = 0; f < count; ++f) {
    const std::size_t deg = degree(rng);
    const double a0 = coef(rng);
    std::vector<double> a(deg);
    std::vector<double> b(deg);
    for (std::size_t m = 0; m < deg; ++m) {
      a[m] = coef(rng);
      b[m] = coef(rng);
    }
    auto value = [a0, a, b](double x) {
      double acc = a0;
      for (std::size_t m = 0; m < a.size(); ++m) {
        const double arg = 2.0 * std::numbers::pi * static_cast<double>(m + 1) * x;
        acc += a[m] * std::cos(arg) + b[m] * std::sin(arg);
      }
      return acc;
    };
    auto slope = [a, b](double x) {
      double acc = 0.0;
      for (std::size_t m = 0; m < a.size(); ++m) {
        const double freq = 2.0 * std::numbers::pi * static_cast<double>(m + 1);
        acc += freq * (-a[m] * std::sin(freq * x) + b[m] * std::cos(freq * x));
      }
      return acc;
    };
    std::ostringstream label;
    label << "trig#" << f << "(deg " << deg << ")";
    out.push_back(TestFunction::from_smooth(label.str(), value, slope));
  }
  return out;
}

std::vector<double> apply_operator(const ProbVec& p, std::span<const double> w,
                                   const OperatorDiscretization& disc) {
  return TransferOperator(p, disc).apply(w);
}

namespace {

double dense_point(std::size_t j) {
  return static_cast<double>(j) / static_cast<double>(kDenseGrid - 1);
}

std::vector<double> first_image(const TransferOperator& op, const TestFunction& f) {
  if (f.is_smooth()) return op.apply_exact(f.smooth);
  if (f.branchwise) return op.apply_branchwise(f.branchwise);
  throw DomainError("test function has neither a smooth nor a branchwise form");
}

double sup_abs(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace

ContractionReport contraction_check(const ProbVec& p, const OperatorDiscretization& disc,
                                    std::span<const TestFunction> battery) {
  if (battery.empty()) throw DomainError("contraction check needs a nonempty battery");
  const TransferOperator op(p, disc);
  ContractionReport report;
  std::vector<double> row(disc.resolution());
  for (const auto& f : battery) {
    if (!f.is_smooth()) throw DomainError("contraction check needs smooth test functions");
    const auto u = op.apply_exact(f.smooth);
    const auto du = disc.derivative(u);
    report.slack = std::max(report.slack, 10.0 * disc.interpolation_error(du) + 1e-9);

    ContractionEntry e;
    e.label = f.label;
    for (std::size_t j = 0; j < kDenseGrid; ++j) {
      const double x = dense_point(j);
      double acc = 0.0;
      for (std::size_t k = 1; k <= p.support_n(); ++k) {
        const double pk = p.weight(static_cast<Digit>(k));
        if (pk == 0.0) continue;
        const double s = static_cast<double>(k) + x;
        acc -= pk * disc.interpolate(du, 1.0 / s) / (s * s);
      }
      e.derivative_sup = std::max(e.derivative_sup, std::abs(acc));
      e.value_sup = std::max(e.value_sup, std::abs(f.smooth(x)));
      if (f.derivative) {
        e.derivative_of_w_sup = std::max(e.derivative_of_w_sup, std::abs(f.derivative(x)));
      } else {
        const double h = 1e-6;
        const double lo = std::max(0.0, x - h);
        const double hi = std::min(1.0, x + h);
        e.derivative_of_w_sup =
            std::max(e.derivative_of_w_sup, std::abs((f.smooth(hi) - f.smooth(lo)) / (hi - lo)));
      }
    }
    e.ratio = e.value_sup > 0.0 ? e.derivative_sup / e.value_sup : 0.0;
    e.lipschitz_ratio = e.derivative_of_w_sup > 0.0 ? e.derivative_sup / e.derivative_of_w_sup : 0.0;
    report.entries.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    report.max_ratio = std::max(report.max_ratio, e.ratio);
    report.max_lipschitz_ratio = std::max(report.max_lipschitz_ratio, e.lipschitz_ratio);
    if (e.ratio > kContractionBound + report.slack) report.flagged.push_back(i);
    if (e.lipschitz_ratio > kContractionBound + report.slack) report.lipschitz_flagged.push_back(i);
  }
  return report;
}

CorrelationReport correlation_decay(const ProbVec& p, const TestFunction& v,
                                    const TestFunction& w, std::size_t m_max,
                                    const OperatorDiscretization& disc,
                                    std::size_t direct_depth) {
  if (!v.is_smooth()) throw DomainError("correlation_decay needs a smooth observable v");
  const EquilibriumState state(p, disc);
  const TransferOperator& op = state.transfer_operator();
  CorrelationReport r;

  // Means through one exact application of L, which mu_p leaves invariant.
  r.v_mean = state.integrate(op.apply_exact(v.smooth));
  auto u = first_image(op, w);
  r.w_mean = state.integrate(u);
  for (double& x : u) x -= r.w_mean;
  const double scale = std::max(1.0, sup_abs(u));
  if (std::abs(state.integrate(u)) > 1e-12 * scale) {
    throw DomainError("correlation_decay: w is not centered after centering");
  }
  for (std::size_t j = 0; j < kDenseGrid; ++j) {
    r.v_sup = std::max(r.v_sup, std::abs(v.smooth(dense_point(j)) - r.v_mean));
  }

  std::vector<double> scratch;
  for (std::size_t m = 1; m <= m_max; ++m) {
    if (m > 1) op.apply_in_place(u, scratch);
    r.certificates.push_back(r.v_sup * sup_abs(u));
  }

  // Direct sums: integral vbar(y) wbar(psi_word(y)) d mu(y) weighted by p_word,
  // psi_word(y) = 1/(i_1 + 1/(i_2 + ... + 1/(i_m + y))).
  const auto nodes = disc.nodes();
  const auto nu = state.stationary();
  std::vector<Digit> digits;
  for (std::size_t k = 1; k <= p.support_n(); ++k) {
    if (p.weight(static_cast<Digit>(k)) > 0.0) digits.push_back(static_cast<Digit>(k));
  }
  auto wbar = [&](Digit first, double x) {
    const double raw = w.is_smooth() ? w.smooth(x) : w.branchwise(first, x);
    return raw - r.w_mean;
  };
  for (std::size_t m = 1; m <= direct_depth; ++m) {
    if (std::pow(static_cast<double>(digits.size()), static_cast<double>(m)) > 1e6) break;
    std::vector<Digit> word(m, digits.front());
    std::vector<std::size_t> index(m, 0);
    double total = 0.0;
    for (;;) {
      double weight = 1.0;
      for (Digit d : word) weight *= p.weight(d);
      double acc = 0.0;
      for (std::size_t a = 0; a < nodes.size(); ++a) {
        double x = nodes[a];
        for (std::size_t k = m; k-- > 0;) x = 1.0 / (static_cast<double>(word[k]) + x);
        acc += nu[a] * (v.smooth(nodes[a]) - r.v_mean) * wbar(word[0], x);
      }
      total += weight * acc;
      std::size_t pos = 0;
      while (pos < m && ++index[pos] == digits.size()) {
        index[pos] = 0;
        word[pos] = digits[0];
        ++pos;
      }
      if (pos == m) break;
      word[pos] = digits[index[pos]];
    }
    r.direct.push_back(total);
  }
  return r;
}

double leading_eigenvalue(const ProbVec& p, const OperatorDiscretization& disc, double t,
                          std::size_t max_iter) {
  const TransferOperator op(p, disc, t);
  std::vector<double> v(op.size(), 1.0);
  std::vector<double> scratch;
  double prev = 0.0;
  int stable = 0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    double before = 0.0;
    for (double x : v) before += x;
    op.apply_in_place(v, scratch);
    double after = 0.0;
    for (double x : v) after += x;
    const double est = after / before;
    if (!std::isfinite(est)) throw NumericError("leading_eigenvalue: non-finite iterate");
    const double norm = sup_abs(v);
    for (double& x : v) x /= norm;
    if (it > 0 && std::abs(est - prev) <= 1e-15 * std::abs(est)) {
      if (++stable >= 3) return est;
    } else {
      stable = 0;
    }
    prev = est;
  }
  std::ostringstream msg;
  msg << "power iteration for t = " << t << " did not settle in " << max_iter
      << " iterations; shrink t or refine the discretization";
  throw ConvergenceError(msg.str());
}

PressureProbe pressure_probe(const ProbVec& p, const OperatorDiscretization& disc, double step) {
  if (!(step > 0.0)) throw DomainError("pressure probe step must be positive");
  PressureProbe probe;
  probe.step = step;
  probe.t_grid = {-2 * step, -step, 0.0, step, 2 * step};
  for (double t : probe.t_grid) probe.logs.push_back(std::log(leading_eigenvalue(p, disc, t)));
  const auto& P = probe.logs;
  probe.d1 = (8.0 * (P[3] - P[1]) - (P[4] - P[0])) / (12.0 * step);
  probe.d2 = (P[3] - 2.0 * P[2] + P[1]) / (step * step);
  return probe;
}

double pressure_mixed_partial(const ProbVec& p, Digit i, Digit j,
                              const OperatorDiscretization& disc, double delta, double step) {
  if (i == j || i == 0 || j == 0 || i > p.support_n() || j > p.support_n()) {
    throw DomainError("mixed partial needs two distinct digits in the support");
  }
  if (!(p.weight(i) > delta && p.weight(j) > delta)) {
    throw DomainError("mixed partial step leaves the simplex");
  }
  auto shifted = [&](double s) {
    std::vector<double> w(p.weights().begin(), p.weights().end());
    w[i - 1] += s;
    w[j - 1] -= s;
    return ProbVec(std::move(w));
  };
  const double up = pressure_probe(shifted(delta), disc, step).d1;
  const double down = pressure_probe(shifted(-delta), disc, step).d1;
  return (up - down) / (2.0 * delta);
}

}  // namespace dimmax
