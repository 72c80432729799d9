#ifndef WBGP_CAMPAIGN_HPP
#define WBGP_CAMPAIGN_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wbgp/bo_loop.hpp"
#include "wbgp/problems.hpp"

namespace wbgp {

/// One algorithm column of the study: GP-BO or WBGP-BO with N members.
struct AlgorithmSpec {
  Algorithm algorithm = Algorithm::kGpBo;
  std::size_t n_members = 0;

  /// "gpbo" or "wbgp<N>" with 1 <= N <= 64.
  [[nodiscard]] static std::optional<AlgorithmSpec> parse(std::string_view id);
  /// "gpbo", "wbgp16", ...
  [[nodiscard]] std::string id() const;
  /// "GP-BO", "WBGP-BO-N16", ...
  [[nodiscard]] std::string label() const;

  friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

struct CampaignConfig {
  std::vector<TestProblem> problems;
  std::vector<AlgorithmSpec> algorithms;
  std::size_t n_runs = 30;
  std::size_t n_iters = 30;
  std::size_t n_init = 5;
  double xi = 2.0;
  std::uint64_t master_seed = 42;
  std::size_t jobs = 1;

  [[nodiscard]] RunConfig run_config(const AlgorithmSpec& alg, std::size_t run_index) const;
};

struct RunOutcome {
  std::size_t problem = 0;
  std::size_t algorithm = 0;
  std::size_t run = 0;
  std::optional<RunTrace> trace;  // empty if the run failed
  std::string error;
};

/// Aggregate of one (problem, algorithm) pair over all runs.
struct CellSummary {
  std::string problem;
  std::string algorithm;
  std::vector<double> finals;  // final best of each successful run, in run order
  double mean = 0.0;
  double std = 0.0;            // population standard deviation
  std::optional<double> p_value;  // Wilcoxon vs GP-BO; empty when not applicable
  bool p_degenerate = false;      // all paired differences were zero
  bool complete = false;          // every run succeeded
};

struct CampaignResult {
  std::vector<std::string> problems;
  std::vector<AlgorithmSpec> algorithms;
  std::size_t n_runs = 0;
  std::size_t steps_per_run = 0;
  std::vector<RunOutcome> runs;  // ordered by (problem, algorithm, run)
  std::vector<CellSummary> cells;  // ordered by (problem, algorithm)

  [[nodiscard]] const RunOutcome& outcome(std::size_t problem, std::size_t algorithm, std::size_t run) const;
  [[nodiscard]] const CellSummary& cell(std::size_t problem, std::size_t algorithm) const;
  [[nodiscard]] const CellSummary* find_cell(std::string_view problem, std::string_view algorithm_label) const;
};

/// Population mean and standard deviation.
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};
[[nodiscard]] MeanStd mean_std(const std::vector<double>& xs);

/// Runs every (problem, algorithm, run) cell on `jobs` worker threads. The
/// result does not depend on the worker count. Failed runs are recorded and
/// the campaign continues.
[[nodiscard]] CampaignResult run_campaign(const CampaignConfig& cfg);

/// Writes summary.csv, traces.csv, timing.csv, failures.csv, README.txt and
/// convergence/<problem>.csv under out_dir. Throws std::runtime_error if a
/// file cannot be written.
void emit_results(const CampaignResult& result, const std::filesystem::path& out_dir);

}  // namespace wbgp

#endif  // WBGP_CAMPAIGN_HPP
