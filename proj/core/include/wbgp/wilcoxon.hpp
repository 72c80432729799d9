#ifndef WBGP_WILCOXON_HPP
#define WBGP_WILCOXON_HPP

#include <cstddef>
#include <span>

namespace wbgp {

/// Effective sample sizes up to this use the exact null distribution.
inline constexpr std::size_t kWilcoxonExactMaxN = 25;

struct WilcoxonResult {
  double p_value = 1.0;        // two-sided
  double statistic = 0.0;      // W+, sum of (mid)ranks of positive differences
  std::size_t n_effective = 0; // pairs left after dropping zero differences
  bool degenerate = false;     // every difference was zero
  bool exact = false;
};

/// Wilcoxon signed-rank test on the paired differences a[i] - b[i].
///
/// Zero differences are dropped. Tied magnitudes get midranks; the exact
/// branch enumerates the conditional null distribution for that tie pattern.
/// Above kWilcoxonExactMaxN a tie-corrected normal approximation with
/// continuity correction is used. Throws std::invalid_argument unless the
/// inputs have equal length of at least 6.
[[nodiscard]] WilcoxonResult wilcoxon_paired(std::span<const double> a, std::span<const double> b);

}  // namespace wbgp

#endif  // WBGP_WILCOXON_HPP
