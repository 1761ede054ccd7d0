#pragma once

// Continued fraction arithmetic for the Gauss map T(x) = 1/x mod 1.
//
// A digit word (i_1, ..., i_N) names the rank-N cylinder of points whose
// first N continued fraction digits are i_1, ..., i_N. Everything here is a
// pure function of its arguments.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace dimmax {

using Digit = std::uint32_t;

// 2 log((1 + sqrt 5) / 2): Lyapunov exponent of the golden mean orbit, the
// smallest value any Bernoulli measure can have.
inline constexpr double kGoldenLyapunov = 0.96242365011920689499551782684873684;
// 2 log(1 + sqrt 2): Lyapunov exponent of the fixed point of the digit-2 branch.
inline constexpr double kSilverLyapunov = 1.76274717403908605046521864995958462;

class DigitWord {
 public:
  // Throws DomainError on an empty word or a zero digit.
  explicit DigitWord(std::vector<Digit> digits);
  DigitWord(std::initializer_list<Digit> digits);

  std::span<const Digit> digits() const noexcept { return digits_; }
  std::size_t size() const noexcept { return digits_.size(); }
  Digit operator[](std::size_t i) const { return digits_[i]; }
  Digit back() const noexcept { return digits_.back(); }

  DigitWord extended(Digit k) const;
  // Same word with the last digit replaced by `k`.
  DigitWord with_last(Digit k) const;

  friend bool operator==(const DigitWord&, const DigitWord&) = default;

 private:
  std::vector<Digit> digits_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const noexcept {
    return lo <= other.lo && other.hi <= hi;
  }
};

struct CylinderGeometry {
  double value = 0.0;  // [i_1, ..., i_N]
  double lo = 0.0;
  double hi = 0.0;
  // Bracket of 2 log(1/x) over [lo, hi]; the function is decreasing so the
  // bracket comes straight from the endpoints.
  double logderiv_lo = 0.0;
  double logderiv_hi = 0.0;
};

// 1/(i_1 + 1/(i_2 + ... + 1/i_N)), evaluated back to front.
double cf_value(const DigitWord& word);

// Endpoints of the rank-N cylinder: cf_value(word) and cf_value of the word
// with its last digit incremented, sorted so that lo <= hi.
Interval cylinder_interval(const DigitWord& word);

CylinderGeometry cylinder_geometry(const DigitWord& word);

// log |T'(x)| = 2 log(1/x). Throws DomainError unless 0 < x < 1.
double log_deriv(double x);

// min(2 log(1/x), 2 log M). Throws DomainError unless 0 < x < 1 and M >= 2.
double capped_log_deriv(double x, std::uint64_t cap);

// One step of the Gauss map; 0 maps to 0.
double gauss_map(double x);

// First `count` continued fraction digits of x in (0, 1), obtained by
// iterating the Gauss map. Stops early if the orbit hits 0 (x rational in
// floating point).
std::vector<Digit> leading_digits(double x, std::size_t count);

}  // namespace dimmax
