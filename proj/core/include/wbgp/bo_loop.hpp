#ifndef WBGP_BO_LOOP_HPP
#define WBGP_BO_LOOP_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbgp/acquisition.hpp"
#include "wbgp/gp.hpp"

namespace wbgp {

enum class Algorithm { kGpBo, kWbgpBo };

[[nodiscard]] const char* to_string(Algorithm a) noexcept;

/// Objective on the rescaled search space [0, 1].
using Objective = std::function<double(double)>;

struct RunConfig {
  Algorithm algorithm = Algorithm::kWbgpBo;
  std::size_t n_init = 5;
  std::size_t n_iters = 30;
  std::size_t n_members = 16;  // ignored by GP-BO
  std::uint64_t seed = 0;      // run seed; child streams are derived from it
  AcquisitionConfig acquisition;
  /// Diagnostic: every ensemble member uses these hyperparameters instead of
  /// a pool draw.
  std::optional<KernelHyperparams> forced_member_hyperparams;
  HyperparamBox mle_box;

  void validate() const;
};

struct RunTrace {
  std::vector<double> queries;
  std::vector<double> values;
  std::vector<double> best_so_far;
  std::vector<double> wall_times;  // seconds per evaluation step

  [[nodiscard]] std::size_t size() const noexcept { return queries.size(); }
  [[nodiscard]] double final_best() const { return best_so_far.back(); }
};

/// A run that could not recover from a GP fit failure.
class RunError : public std::runtime_error {
 public:
  RunError(const std::string& what, std::size_t iteration)
      : std::runtime_error(what), iteration_(iteration) {}
  [[nodiscard]] std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

/// Latin hypercube design on [0, 1]: one uniform point in each of n equal
/// strata, returned in shuffled order.
[[nodiscard]] std::vector<double> lhs_init(std::size_t n, std::uint64_t seed);

/// Vanilla GP-BO: MLE refit of a single SE-kernel GP every iteration.
[[nodiscard]] RunTrace run_gp_bo(const Objective& f, const RunConfig& cfg);

/// WBGP-BO: fixed-hyperparameter ensemble drawn once from the pool, refit
/// every iteration, next query minimizes the barycenter LCB.
[[nodiscard]] RunTrace run_wbgp_bo(const Objective& f, const RunConfig& cfg);

/// Single GP with hyperparameters held fixed for the whole run.
[[nodiscard]] RunTrace run_fixed_gp_bo(const Objective& f, const RunConfig& cfg, const KernelHyperparams& h);

[[nodiscard]] RunTrace run_bo(const Objective& f, const RunConfig& cfg);

}  // namespace wbgp

#endif  // WBGP_BO_LOOP_HPP
