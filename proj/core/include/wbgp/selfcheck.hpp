#ifndef WBGP_SELFCHECK_HPP
#define WBGP_SELFCHECK_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace wbgp::selfcheck {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;  // largest observed violation / error
  std::string detail;
};

/// Every benchmark formula reproduces its reference minimum within 1e-3.
[[nodiscard]] CheckResult table_minima();

/// |mean of member LCBs - LCB of the barycenter| <= 1e-12 over random
/// ensembles, points and exploration weights; same for the UCB.
[[nodiscard]] std::vector<CheckResult> confidence_bound_identity(std::size_t trials = 1000, std::uint64_t seed = 7);

/// Closed-form barycenter objective <= every node of a 200x200 (mean, std)
/// grid over the inputs' bounding box.
[[nodiscard]] CheckResult barycenter_grid_optimality(std::size_t sets = 100, std::uint64_t seed = 11);

/// Cholesky posterior vs. an explicit-inverse implementation within 1e-8.
[[nodiscard]] CheckResult gp_dense_oracle(std::size_t datasets = 50, std::uint64_t seed = 13);

/// Metric axioms of sqrt(w2_squared_1d) and 1x1 multivariate consistency.
[[nodiscard]] std::vector<CheckResult> w2_metric(std::size_t triples = 1000, std::uint64_t seed = 17);

/// Exact Wilcoxon p-values vs. enumeration of all 2^n sign patterns, n <= 12.
[[nodiscard]] CheckResult wilcoxon_enumeration(std::size_t cases = 200, std::uint64_t seed = 19);

/// All of the above.
[[nodiscard]] std::vector<CheckResult> run_all();

}  // namespace wbgp::selfcheck

#endif  // WBGP_SELFCHECK_HPP
