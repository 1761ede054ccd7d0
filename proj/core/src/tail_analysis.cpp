#include "dimmax/tail_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "dimmax/error.hpp"

namespace dimmax {

std::pair<std::size_t, std::size_t> default_fit_range(std::size_t n) {
  return {std::max<std::size_t>(8, n / 32), n / 4};
}

PowerLawFit fit_tail_exponent(const ProbVec& p, std::size_t k_lo, std::size_t k_hi) {
  if (k_lo < 1 || k_hi > p.support_n() || k_hi < k_lo || k_hi - k_lo + 1 < 4) {
    throw DomainError("power-law fit needs at least 4 digits inside the support");
  }
  const double count = static_cast<double>(k_hi - k_lo + 1);
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    const double pk = p.weight(static_cast<Digit>(k));
    if (!(pk > 0.0)) throw DomainError("power-law fit needs positive weights in range");
    mx += std::log(static_cast<double>(k));
    my += std::log(pk);
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    const double x = std::log(static_cast<double>(k)) - mx;
    const double y = std::log(p.weight(static_cast<Digit>(k))) - my;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.k_lo = k_lo;
  fit.k_hi = k_hi;
  return fit;
}

RatioAudit check_ratio_bounds(const ProbVec& p, double d, double slack) {
  if (!p.interior()) throw DomainError("ratio audit needs strictly positive weights");
  if (!(d > 0.0 && d < 1.0)) throw DomainError("ratio audit needs 0 < d < 1");
  RatioAudit audit;
  audit.slack = slack;
  const std::size_t n = p.support_n();
  for (std::size_t i = 2; i <= n; ++i) {
    for (std::size_t j = 1; j < i; ++j) {
      const double di = static_cast<double>(i);
      const double dj = static_cast<double>(j);
      const double value = std::log(p.weight(static_cast<Digit>(j)) / p.weight(static_cast<Digit>(i)));
      const double lower = 2.0 * d * std::log(di / (dj + 1.0));
      const double upper = 2.0 * d * std::log((di + 1.0) / dj);
      ++audit.pairs_checked;
      double margin = 0.0;
      if (value < lower - slack) margin = lower - slack - value;
      if (value > upper + slack) margin = value - upper - slack;
      if (margin > 0.0) {
        audit.violations.push_back({static_cast<Digit>(i), static_cast<Digit>(j), value, lower,
                                    upper, margin});
      }
    }
  }
  return audit;
}

ComparabilityBracket comparability(const ProbVec& p, double d, std::size_t k_lo,
                                   std::size_t k_hi) {
  if (k_lo < 1 || k_hi > p.support_n() || k_hi < k_lo) {
    throw DomainError("comparability range outside the support");
  }
  ComparabilityBracket b{INFINITY, 0.0};
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    const double s = p.weight(static_cast<Digit>(k)) * std::pow(static_cast<double>(k), 2.0 * d);
    b.min_scaled = std::min(b.min_scaled, s);
    b.max_scaled = std::max(b.max_scaled, s);
  }
  return b;
}

std::vector<TailRow> tail_rows(const ProbVec& p, double d) {
  std::vector<TailRow> rows;
  rows.reserve(p.support_n());
  for (std::size_t k = 1; k <= p.support_n(); ++k) {
    const double pk = p.weight(static_cast<Digit>(k));
    rows.push_back({k, pk, pk * std::pow(static_cast<double>(k), 2.0 * d)});
  }
  return rows;
}

void write_tail_tsv(std::ostream& out, const std::vector<TailRow>& rows) {
  out << "k\tp_k\tk^(2d)*p_k\n";
  out << std::setprecision(17);
  for (const auto& r : rows) out << r.k << '\t' << r.p << '\t' << r.scaled << '\n';
}

}  // namespace dimmax
