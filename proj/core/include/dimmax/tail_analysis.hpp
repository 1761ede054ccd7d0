#pragma once

// Shape of optimal weights: the power law p_k ~ k^{-2d} and the pairwise
// ratio bounds 2d log(i/(j+1)) <= log(p_j/p_i) <= 2d log((i+1)/j).

#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "dimmax/prob_vec.hpp"

namespace dimmax {

struct PowerLawFit {
  double slope = 0.0;  // estimates -2d
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t k_lo = 0;
  std::size_t k_hi = 0;
};

// Ordinary least squares of log p_k on log k for k_lo <= k <= k_hi.
// Throws DomainError with fewer than 4 points, k_hi > n or p_k <= 0 in range.
PowerLawFit fit_tail_exponent(const ProbVec& p, std::size_t k_lo, std::size_t k_hi);

// [max(8, n/32), n/4]: skips the first few digits and the part of the
// support distorted by truncation at n.
std::pair<std::size_t, std::size_t> default_fit_range(std::size_t n);

struct RatioViolation {
  Digit i = 0;  // i > j
  Digit j = 0;
  double log_ratio = 0.0;  // log(p_j / p_i)
  double lower = 0.0;
  double upper = 0.0;
  // Distance outside [lower - slack, upper + slack]; positive.
  double margin = 0.0;
};

struct RatioAudit {
  std::size_t pairs_checked = 0;
  double slack = 0.0;
  std::vector<RatioViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

// Tests every pair n >= i > j >= 1. Throws DomainError unless p is interior
// and 0 < d < 1.
RatioAudit check_ratio_bounds(const ProbVec& p, double d, double slack);

// Range of p_k k^{2d} over [k_lo, k_hi].
struct ComparabilityBracket {
  double min_scaled = 0.0;
  double max_scaled = 0.0;

  double factor() const noexcept { return max_scaled / min_scaled; }
};

ComparabilityBracket comparability(const ProbVec& p, double d, std::size_t k_lo,
                                   std::size_t k_hi);

struct TailRow {
  std::size_t k = 0;
  double p = 0.0;
  double scaled = 0.0;  // k^{2d} p_k
};

std::vector<TailRow> tail_rows(const ProbVec& p, double d);

// Header plus one "k<TAB>p_k<TAB>k^(2d) p_k" line per digit.
void write_tail_tsv(std::ostream& out, const std::vector<TailRow>& rows);

}  // namespace dimmax
