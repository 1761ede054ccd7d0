#include "dimmax/cf_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dimmax/error.hpp"

namespace dimmax {

DigitWord::DigitWord(std::vector<Digit> digits) : digits_(std::move(digits)) {
  if (digits_.empty()) throw DomainError("digit word must not be empty");
  if (std::find(digits_.begin(), digits_.end(), Digit{0}) != digits_.end()) {
    throw DomainError("continued fraction digits must be >= 1");
  }
}

DigitWord::DigitWord(std::initializer_list<Digit> digits)
    : DigitWord(std::vector<Digit>(digits)) {}

DigitWord DigitWord::extended(Digit k) const {
  std::vector<Digit> d = digits_;
  d.push_back(k);
  return DigitWord(std::move(d));
}

DigitWord DigitWord::with_last(Digit k) const {
  std::vector<Digit> d = digits_;
  d.back() = k;
  return DigitWord(std::move(d));
}

namespace {

double back_to_front(std::span<const Digit> digits, double last) {
  // tail = i_N (possibly bumped), then tail <- i_k + 1/tail.
  double tail = last;
  for (std::size_t k = digits.size() - 1; k-- > 0;) {
    tail = static_cast<double>(digits[k]) + 1.0 / tail;
  }
  return 1.0 / tail;
}

}  // namespace

double cf_value(const DigitWord& word) {
  return back_to_front(word.digits(), static_cast<double>(word.back()));
}

Interval cylinder_interval(const DigitWord& word) {
  const double a = cf_value(word);
  const double b = back_to_front(word.digits(), static_cast<double>(word.back()) + 1.0);
  return a <= b ? Interval{a, b} : Interval{b, a};
}

CylinderGeometry cylinder_geometry(const DigitWord& word) {
  const Interval iv = cylinder_interval(word);
  CylinderGeometry g;
  g.value = cf_value(word);
  g.lo = iv.lo;
  g.hi = iv.hi;
  // Widened by a few ulps so the bracket survives rounding in the endpoints
  // and in however the caller evaluates 2 log(1/x).
  constexpr double kWiden = 8.0 * std::numeric_limits<double>::epsilon();
  const double lo = -2.0 * std::log(iv.hi);
  const double hi = -2.0 * std::log(iv.lo);
  g.logderiv_lo = lo - kWiden * (std::abs(lo) + 1e-300);
  g.logderiv_hi = hi + kWiden * (std::abs(hi) + 1e-300);
  return g;
}

double log_deriv(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError("log_deriv requires 0 < x < 1, got " + std::to_string(x));
  }
  return -2.0 * std::log(x);
}

double capped_log_deriv(double x, std::uint64_t cap) {
  if (cap < 2) throw DomainError("capped_log_deriv requires M >= 2");
  return std::min(log_deriv(x), 2.0 * std::log(static_cast<double>(cap)));
}

double gauss_map(double x) {
  if (x == 0.0) return 0.0;
  const double y = 1.0 / x;
  return y - std::floor(y);
}

std::vector<Digit> leading_digits(double x, std::size_t count) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("leading_digits requires 0 < x < 1");
  std::vector<Digit> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count && x > 0.0; ++n) {
    const double y = 1.0 / x;
    const double digit = std::floor(y);
    if (digit > static_cast<double>(std::numeric_limits<Digit>::max())) break;
    out.push_back(static_cast<Digit>(digit));
    x = y - digit;
  }
  return out;
}

}  // namespace dimmax
