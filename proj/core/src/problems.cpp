#include "wbgp/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace wbgp {

double TestProblem::rescaled_eval(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::out_of_range(name + ": rescaled input " + std::to_string(u) + " outside [0, 1]");
  }
  return formula(to_original(u));
}

namespace {

using std::numbers::pi;

double problem03(double x) {
  // The i = 0 term vanishes; kept so the sum reads as written.
  double s = 0.0;
  for (int i = 0; i <= 5; ++i) {
    s += i * std::sin((i + 1) * x + i);
  }
  return -s;
}

std::vector<TestProblem> make_suite() {
  return {
      {"problem02", [](double x) { return std::sin(x) + std::sin(10.0 / 3.0 * x); }, 2.7, 7.5, 5.1457, -1.8996},
      {"problem03", problem03, -10.0, 10.0, -6.7746, -12.0312},
      {"problem05", [](double x) { return -(1.4 - 3.0 * x) * std::sin(18.0 * x); }, 0.0, 1.2, 0.9661, -1.4891},
      {"problem06", [](double x) { return -(x + std::sin(x)) * std::exp(-x * x); }, -10.0, 10.0, 0.6796, -0.8242},
      {"problem07",
       [](double x) { return std::sin(x) + std::sin(10.0 / 3.0 * x) + std::log(x) - 0.84 * x + 3.0; }, 2.7, 7.5,
       5.1998, -1.6013},
      {"problem11", [](double x) { return 2.0 * std::cos(x) + std::cos(2.0 * x); }, -pi / 2.0, 2.0 * pi, 2.0 * pi / 3.0,
       -1.5},
      {"problem14", [](double x) { return -std::exp(-x) * std::sin(2.0 * pi * x); }, 0.0, 4.0, 0.2249, -0.7887},
      {"problem15", [](double x) { return (x * x - 5.0 * x + 6.0) / (x * x + 1.0); }, -5.0, 5.0, 2.4142, -0.0355},
      {"problem22", [](double x) { return std::exp(-3.0 * x) - std::pow(std::sin(x), 3); }, 0.0, 20.0,
       9.0 * pi / 2.0, std::exp(-27.0 * pi / 2.0) - 1.0},
  };
}

}  // namespace

std::span<const TestProblem> problem_suite() {
  static const std::vector<TestProblem> suite = make_suite();
  return suite;
}

std::optional<TestProblem> find_problem(std::string_view id) {
  if (id.starts_with("problem")) {
    id.remove_prefix(7);
  }
  if (id.empty() || id.size() > 2 || id.find_first_not_of("0123456789") != std::string_view::npos) {
    return std::nullopt;
  }
  const std::string key = id.size() == 1 ? "problem0" + std::string(id) : "problem" + std::string(id);
  for (const auto& p : problem_suite()) {
    if (p.name == key) {
      return p;
    }
  }
  return std::nullopt;
}

}  // namespace wbgp
