#ifndef WBGP_PROBLEMS_HPP
#define WBGP_PROBLEMS_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace wbgp {

/// A univariate benchmark function on its original interval [lower, upper].
struct TestProblem {
  std::string name;  // e.g. "problem02"
  std::function<double(double)> formula;
  double lower = 0.0;
  double upper = 1.0;
  double known_minimizer = 0.0;
  double known_minimum = 0.0;

  /// Affine map [0, 1] -> [lower, upper].
  [[nodiscard]] double to_original(double u) const noexcept { return lower + u * (upper - lower); }

  /// formula(lower + u (upper - lower)); throws std::out_of_range outside [0, 1].
  [[nodiscard]] double rescaled_eval(double u) const;
};

/// Problems 02, 03, 05, 06, 07, 11, 14, 15, 22 in that order.
[[nodiscard]] std::span<const TestProblem> problem_suite();

/// Accepts "02", "2", "problem02".
[[nodiscard]] std::optional<TestProblem> find_problem(std::string_view id);

}  // namespace wbgp

#endif  // WBGP_PROBLEMS_HPP
