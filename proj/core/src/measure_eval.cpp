#include "dimmax/measure_eval.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "dimmax/error.hpp"
#include "dimmax/parallel.hpp"

namespace dimmax {

namespace {

constexpr double kUnderflowPrune = 1e-300;
constexpr double kLeafRounding = 8.0 * std::numeric_limits<double>::epsilon();

// Neumaier-compensated accumulator.
struct Sum {
  double total = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = total + x;
    carry += std::abs(total) >= std::abs(x) ? (total - t) + x : (x - t) + total;
    total = t;
  }
  double value() const { return total + carry; }
};

std::vector<Digit> active_digit_list(const ProbVec& p) {
  std::vector<Digit> out;
  for (std::size_t k = 1; k <= p.support_n(); ++k) {
    if (p.weight(static_cast<Digit>(k)) > 0.0) out.push_back(static_cast<Digit>(k));
  }
  return out;
}

void check_budget(std::size_t active, std::size_t depth, double budget) {
  if (depth == 0) throw DomainError("cylinder depth must be >= 1");
  const double words = std::pow(static_cast<double>(active), static_cast<double>(depth));
  if (words > budget) {
    std::ostringstream msg;
    msg << "cylinder enumeration of " << active << "^" << depth << " words exceeds the budget of "
        << budget << "; use the operator method";
    throw BudgetError(msg.str());
  }
}

// Depth-first walk over words with the continuant recurrences
//   num_k = i_k num_{k-1} + num_{k-2},  den_k = i_k den_{k-1} + den_{k-2},
// so [i_1..i_k] = num_k / den_k and the other cylinder endpoint is
// (num_k + num_{k-1}) / (den_k + den_{k-1}). Every term is positive, so the
// recurrence loses no precision to cancellation.
class CylinderWalk {
 public:
  CylinderWalk(const ProbVec& p, std::vector<Digit> digits, std::size_t depth)
      : p_(p), digits_(std::move(digits)), depth_(depth) {}

  void run(Digit first) {
    const double w = p_.weight(first);
    const double d = static_cast<double>(first);
    visit(1, w, 0.0, 1.0, 1.0, d);
  }

  Sum estimate;
  Sum err;

 private:
  void leaf(double w, double num_prev, double num, double den_prev, double den) {
    // phi = 2 log(den / num) at one endpoint, 2 log((den+den_prev)/(num+num_prev)) at the other.
    const double a = 2.0 * std::log(den / num);
    const double b = 2.0 * std::log((den + den_prev) / (num + num_prev));
    estimate.add(w * 0.5 * (a + b));
    // Half-width plus a rounding allowance for the two logarithms.
    err.add(w * (0.5 * std::abs(a - b) + kLeafRounding * std::max(a, b)));
  }

  void visit(std::size_t level, double w, double num_prev, double num, double den_prev,
             double den) {
    if (level == depth_ || w < kUnderflowPrune) {
      leaf(w, num_prev, num, den_prev, den);
      return;
    }
    for (Digit k : digits_) {
      const double kd = static_cast<double>(k);
      visit(level + 1, w * p_.weight(k), num, kd * num + num_prev, den, kd * den + den_prev);
    }
  }

  const ProbVec& p_;
  std::vector<Digit> digits_;
  std::size_t depth_;
};

Estimate enumerate(const ProbVec& p, std::span<const Digit> first_digits, std::size_t depth,
                   double budget) {
  const auto digits = active_digit_list(p);
  check_budget(digits.size(), depth, budget);
  std::vector<Estimate> partial(first_digits.size());
  parallel_for(first_digits.size(), [&](std::size_t idx) {
    CylinderWalk walk(p, digits, depth);
    walk.run(first_digits[idx]);
    partial[idx] = {walk.estimate.value(), walk.err.value()};
  });
  Sum est;
  Sum err;
  for (const auto& e : partial) {
    est.add(e.value);
    err.add(e.err);
  }
  return {est.value(), err.value()};
}

std::vector<double> lyapunov_first_image(const ProbVec& p, const OperatorDiscretization& disc) {
  // L phi(x) = sum_k p_k phi(1/(k+x)) = sum_k p_k 2 log(k + x).
  return disc.sample([&p](double x) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= p.support_n(); ++k) {
      const double pk = p.weight(static_cast<Digit>(k));
      if (pk > 0.0) acc += pk * 2.0 * std::log(static_cast<double>(k) + x);
    }
    return acc;
  });
}

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  double mid() const { return 0.5 * (lo + hi); }
  double half() const { return 0.5 * (hi - lo); }
};

Range range_of(std::span<const double> v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*lo, *hi};
}

// Iterates the operator on node values and returns the final range, with
// the accumulated interpolation error estimate.
Estimate iterate_to_constant(const TransferOperator& op, std::vector<double> values,
                             std::size_t iterations, const char* what) {
  const auto& disc = op.discretization();
  double interp = disc.interpolation_error(values);
  std::vector<double> scratch;
  std::vector<double> halves;
  halves.reserve(iterations + 1);
  halves.push_back(range_of(values).half());
  for (std::size_t it = 0; it < iterations; ++it) {
    op.apply_in_place(values, scratch);
    interp += disc.interpolation_error(values);
    const Range r = range_of(values);
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi)) {
      throw NumericError(std::string(what) + ": non-finite operator iterate");
    }
    halves.push_back(r.half());
  }
  const Range r = range_of(values);
  const double scale = std::max(1.0, std::abs(r.mid()));
  if (iterations >= 10 && r.half() > 1e-8 * scale && halves.back() > 0.9 * halves[iterations - 5]) {
    std::ostringstream msg;
    msg << what << ": operator iterates are not converging (half-range " << halves.back()
        << " after " << iterations << " iterations, " << halves[iterations - 5] << " five earlier)";
    throw ConvergenceError(msg.str());
  }
  return {r.mid(), r.half() + interp};
}

}  // namespace

std::string MethodTag::describe() const {
  std::ostringstream s;
  if (kind == Kind::cylinder) {
    s << "cylinder(" << depth << ")";
  } else {
    s << "operator(" << iterations << ", "
      << (scheme == OperatorDiscretization::Scheme::chebyshev ? "chebyshev" : "uniform_grid")
      << " " << nodes << ")";
  }
  return s.str();
}

EvalMethod default_method(const ProbVec& p) {
  const std::size_t active = p.active_digits();
  if (active == 1) return CylinderMethod{kMaxCylinderDepth};
  std::size_t depth = 0;
  double words = 1.0;
  while (depth < kMaxCylinderDepth && words * static_cast<double>(active) <= kCylinderBudget) {
    words *= static_cast<double>(active);
    ++depth;
  }
  if (depth >= 12) return CylinderMethod{depth};
  return OperatorMethod{};
}

double entropy(const ProbVec& p) {
  Sum h;
  for (double x : p.weights()) {
    if (x > 0.0) h.add(-x * std::log(x));
  }
  return h.value();
}

ProbVec truncate(const ProbVec& p, std::size_t n) {
  if (n < 2) throw DomainError("truncation needs n >= 2");
  std::vector<double> w(n, 0.0);
  double tail = 0.0;
  for (std::size_t k = 1; k <= p.support_n(); ++k) {
    const double pk = p.weight(static_cast<Digit>(k));
    if (k <= n) {
      w[k - 1] = pk;
    } else {
      tail += pk;
    }
  }
  w[0] += tail;
  return ProbVec(std::move(w));
}

ProbVec truncate(const TailFamily& family, std::size_t n) {
  if (n < 2) throw DomainError("truncation needs n >= 2");
  std::vector<double> w(n);
  for (std::size_t k = 1; k <= n; ++k) w[k - 1] = family.weight(static_cast<Digit>(k));
  w[0] += family.tail_mass(n);
  // The generator and the tail sum are separate computations; absorb their
  // rounding mismatch so the result is exactly normalized.
  return ProbVec::normalized(std::move(w));
}

Estimate lyapunov_by_cylinders(const ProbVec& p, std::size_t depth, double budget) {
  const auto digits = active_digit_list(p);
  return enumerate(p, digits, depth, budget);
}

Estimate digit_integral_by_cylinders(const ProbVec& p, Digit i, std::size_t depth,
                                     double budget) {
  if (p.weight(i) == 0.0) return {0.0, 0.0};
  const Digit first[] = {i};
  return enumerate(p, first, depth, budget);
}

Estimate lyapunov_by_operator(const ProbVec& p, const OperatorDiscretization& disc,
                              std::size_t iterations) {
  const TransferOperator op(p, disc);
  return iterate_to_constant(op, lyapunov_first_image(p, disc), iterations,
                             "lyapunov_by_operator");
}

double digit_integral(const ProbVec& p, Digit i, const OperatorDiscretization& disc,
                      std::size_t iterations) {
  const double pi = p.weight(i);
  if (pi == 0.0) return 0.0;
  const TransferOperator op(p, disc);
  const double shift = static_cast<double>(i);
  const auto g = disc.sample([shift](double x) { return std::log(shift + x); });
  return 2.0 * pi * iterate_to_constant(op, g, iterations, "digit_integral").value;
}

EvalReport dimension(const ProbVec& p, const EvalMethod& method) {
  EvalReport r;
  r.entropy = entropy(p);
  r.entropy_err = 4.0 * std::numeric_limits<double>::epsilon() *
                  static_cast<double>(p.support_n()) * (r.entropy + 1.0);
  if (const auto* cyl = std::get_if<CylinderMethod>(&method)) {
    const Estimate e = lyapunov_by_cylinders(p, cyl->depth);
    r.lyapunov = e.value;
    r.lyapunov_err = e.err;
    r.method.kind = MethodTag::Kind::cylinder;
    r.method.depth = cyl->depth;
    r.rigorous = true;
  } else {
    const auto& op = std::get<OperatorMethod>(method);
    const Estimate e = lyapunov_by_operator(p, op.disc, op.iterations);
    r.lyapunov = e.value;
    r.lyapunov_err = e.err;
    r.method.kind = MethodTag::Kind::operator_iteration;
    r.method.iterations = op.iterations;
    r.method.nodes = op.disc.resolution();
    r.method.scheme = op.disc.scheme();
    r.rigorous = false;
  }
  if (!std::isfinite(r.lyapunov) || !std::isfinite(r.entropy)) {
    throw NumericError("dimension: non-finite entropy or Lyapunov exponent");
  }
  if (r.lyapunov + r.lyapunov_err < kGoldenLyapunov - 1e-9) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "dimension: Lyapunov exponent " << r.lyapunov << " is below the golden mean floor";
    throw NumericError(msg.str());
  }
  r.dimension = r.entropy / r.lyapunov;
  return r;
}

EvalReport dimension(const ProbVec& p) { return dimension(p, default_method(p)); }

EquilibriumState::EquilibriumState(const ProbVec& p, const OperatorDiscretization& disc)
    : op_(p, disc) {
  const Eigen::Index m = static_cast<Eigen::Index>(op_.size());
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      L(op_.matrix().data(), m, m);
  const Eigen::MatrixXd I_minus_L = Eigen::MatrixXd::Identity(m, m) - L;

  // nu^T (I - L) = 0 with sum nu = 1: replace one equation by the normalization.
  Eigen::MatrixXd A = I_minus_L.transpose();
  A.row(m - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs(m - 1) = 1.0;
  const Eigen::VectorXd nu = A.partialPivLu().solve(rhs);
  nu_.assign(nu.data(), nu.data() + m);

  const auto first = lyapunov_first_image(p, disc);
  lyapunov_ = integrate(first);
  lyapunov_err_ = disc.interpolation_error(first);
  if (!std::isfinite(lyapunov_)) throw NumericError("EquilibriumState: non-finite Lyapunov exponent");

  // (I - L + 1 nu^T) Psi = L phi - lambda has the unique solution with
  // nu . Psi = 0, namely Psi = sum_{m >= 0} L^m (L phi - lambda).
  const Eigen::MatrixXd B = I_minus_L + Eigen::VectorXd::Ones(m) * nu.transpose();
  Eigen::VectorXd g(m);
  for (Eigen::Index a = 0; a < m; ++a) g(a) = first[static_cast<std::size_t>(a)] - lyapunov_;
  const Eigen::VectorXd psi = B.partialPivLu().solve(g);
  poisson_.assign(psi.data(), psi.data() + m);
}

double EquilibriumState::integrate(std::span<const double> node_values) const {
  if (node_values.size() != nu_.size()) throw DomainError("node vector has the wrong length");
  Sum acc;
  for (std::size_t a = 0; a < nu_.size(); ++a) acc.add(nu_[a] * node_values[a]);
  return acc.value();
}

double EquilibriumState::log_shift_mean(Digit i) const {
  const double shift = static_cast<double>(i);
  return integrate(discretization().sample([shift](double x) { return std::log(shift + x); }));
}

double EquilibriumState::digit_integral(Digit i) const {
  const double pi = weights().weight(i);
  if (pi == 0.0) return 0.0;
  return 2.0 * pi * log_shift_mean(i);
}

double EquilibriumState::poisson_branch_mean(Digit i) const {
  const auto& disc = discretization();
  const auto nodes = disc.nodes();
  std::vector<double> row(nodes.size());
  std::vector<double> shifted(nodes.size());
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    disc.interpolation_row(1.0 / (static_cast<double>(i) + nodes[a]), row);
    double acc = 0.0;
    for (std::size_t b = 0; b < row.size(); ++b) acc += row[b] * poisson_[b];
    shifted[a] = acc;
  }
  return integrate(shifted);
}

}  // namespace dimmax
