#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dimmax/cf_kernel.hpp"

namespace dimmax {

// A probability vector (p_1, ..., p_n) on the digits {1, ..., n}. Digits
// beyond n carry zero weight.
class ProbVec {
 public:
  static constexpr double kSumTolerance = 1e-12;

  // Throws DomainError unless every weight is finite and >= 0, at least one
  // is positive and the weights sum to 1 within kSumTolerance.
  explicit ProbVec(std::vector<double> weights);

  // Divides by the sum first. Same checks otherwise.
  static ProbVec normalized(std::vector<double> raw);
  static ProbVec dirac(Digit k);

  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t support_n() const noexcept { return weights_.size(); }

  // 1-based; zero outside {1, ..., n}.
  double weight(Digit k) const noexcept {
    return (k >= 1 && k <= weights_.size()) ? weights_[k - 1] : 0.0;
  }

  // All of p_1, ..., p_n strictly positive.
  bool interior() const noexcept;

  // Number of digits with positive weight.
  std::size_t active_digits() const noexcept;

 private:
  std::vector<double> weights_;
};

// A digit distribution on all of N, known through a generator for p_k and
// the tail mass sum_{l > n} p_l.
class TailFamily {
 public:
  enum class Kind { power_law, gauss_kuzmin, custom_table };

  // p_k = k^{-s} / zeta(s). Throws DomainError unless s > 1.
  static TailFamily power_law(double exponent);
  // p_k = log2(1 + 1/(k (k + 2))).
  static TailFamily gauss_kuzmin();
  // Finitely supported table; must itself be a probability vector.
  static TailFamily custom_table(std::vector<double> weights);

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }

  double weight(Digit k) const;
  // epsilon_n = sum_{l > n} p_l.
  double tail_mass(std::size_t n) const;
  // Entropy and Lyapunov exponent are finite. Every constructible family
  // satisfies sum p_k log k < infinity, so this holds by construction.
  bool certified() const noexcept { return true; }

  // (p_1, ..., p_n) divided by their sum.
  ProbVec renormalized(std::size_t n) const;

 private:
  TailFamily(Kind kind, double exponent, std::vector<double> table);

  Kind kind_;
  double exponent_ = 0.0;
  double zeta_ = 1.0;
  std::vector<double> table_;
};

// sum_{k >= K} k^{-s} for s > 1, by Euler-Maclaurin with the f''' term.
// Accurate to O(K^{-s-5}); used with K around 10^3.
double power_sum_from(double s, std::size_t first);

}  // namespace dimmax
