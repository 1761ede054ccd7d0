#include "dimmax/prob_vec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dimmax/error.hpp"

namespace dimmax {

namespace {

void validate(const std::vector<double>& w) {
  if (w.empty()) throw DomainError("probability vector must not be empty");
  bool any_positive = false;
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) {
      throw DomainError("probability weights must be finite and nonnegative");
    }
    any_positive = any_positive || x > 0.0;
  }
  if (!any_positive) throw DomainError("probability vector has no positive weight");
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  if (std::abs(s - 1.0) > ProbVec::kSumTolerance) {
    throw DomainError("probability weights sum to " + std::to_string(s) + ", not 1");
  }
}

}  // namespace

ProbVec::ProbVec(std::vector<double> weights) : weights_(std::move(weights)) {
  validate(weights_);
}

ProbVec ProbVec::normalized(std::vector<double> raw) {
  const double s = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError("cannot normalize weights with nonpositive sum");
  }
  for (double& x : raw) x /= s;
  return ProbVec(std::move(raw));
}

ProbVec ProbVec::dirac(Digit k) {
  if (k == 0) throw DomainError("digits start at 1");
  std::vector<double> w(k, 0.0);
  w.back() = 1.0;
  return ProbVec(std::move(w));
}

bool ProbVec::interior() const noexcept {
  return std::all_of(weights_.begin(), weights_.end(), [](double x) { return x > 0.0; });
}

std::size_t ProbVec::active_digits() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(weights_.begin(), weights_.end(), [](double x) { return x > 0.0; }));
}

double power_sum_from(double s, std::size_t first) {
  // sum_{k >= K} f(k) = int_K^inf f + f(K)/2 - f'(K)/12 + f'''(K)/720 - ...
  const double K = static_cast<double>(first);
  const double f = std::pow(K, -s);
  return std::pow(K, 1.0 - s) / (s - 1.0) + 0.5 * f + s * f / (12.0 * K) -
         s * (s + 1.0) * (s + 2.0) * f / (720.0 * K * K * K);
}

namespace {

constexpr std::size_t kDirectTerms = 1000;

double power_tail(double s, std::size_t n) {
  // sum_{k > n} k^{-s}
  if (n + 1 >= kDirectTerms) return power_sum_from(s, n + 1);
  double acc = 0.0;
  for (std::size_t k = kDirectTerms - 1; k > n; --k) {
    acc += std::pow(static_cast<double>(k), -s);
  }
  return acc + power_sum_from(s, kDirectTerms);
}

}  // namespace

TailFamily::TailFamily(Kind kind, double exponent, std::vector<double> table)
    : kind_(kind), exponent_(exponent), table_(std::move(table)) {
  if (kind_ == Kind::power_law) zeta_ = power_tail(exponent_, 0);
}

TailFamily TailFamily::power_law(double exponent) {
  if (!(exponent > 1.0) || !std::isfinite(exponent)) {
    throw DomainError("power law tail needs exponent > 1 for summability");
  }
  return TailFamily(Kind::power_law, exponent, {});
}

TailFamily TailFamily::gauss_kuzmin() { return TailFamily(Kind::gauss_kuzmin, 0.0, {}); }

TailFamily TailFamily::custom_table(std::vector<double> weights) {
  validate(weights);
  return TailFamily(Kind::custom_table, 0.0, std::move(weights));
}

double TailFamily::weight(Digit k) const {
  if (k == 0) throw DomainError("digits start at 1");
  const double kd = static_cast<double>(k);
  switch (kind_) {
    case Kind::power_law:
      return std::pow(kd, -exponent_) / zeta_;
    case Kind::gauss_kuzmin:
      return std::log1p(1.0 / (kd * (kd + 2.0))) / std::log(2.0);
    case Kind::custom_table:
      return k <= table_.size() ? table_[k - 1] : 0.0;
  }
  return 0.0;
}

double TailFamily::tail_mass(std::size_t n) const {
  switch (kind_) {
    case Kind::power_law:
      return power_tail(exponent_, n) / zeta_;
    case Kind::gauss_kuzmin:
      // The product of (k+1)^2 / (k (k+2)) over k > n telescopes to (n+2)/(n+1).
      return std::log1p(1.0 / (static_cast<double>(n) + 1.0)) / std::log(2.0);
    case Kind::custom_table: {
      double acc = 0.0;
      for (std::size_t k = n; k < table_.size(); ++k) acc += table_[k];
      return acc;
    }
  }
  return 0.0;
}

ProbVec TailFamily::renormalized(std::size_t n) const {
  if (n == 0) throw DomainError("need at least one digit");
  std::vector<double> w(n);
  for (std::size_t k = 1; k <= n; ++k) w[k - 1] = weight(static_cast<Digit>(k));
  return ProbVec::normalized(std::move(w));
}

}  // namespace dimmax
