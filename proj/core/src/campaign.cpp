#include "wbgp/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

#include "wbgp/ensemble.hpp"
#include "wbgp/seeding.hpp"
#include "wbgp/wilcoxon.hpp"

namespace wbgp {

std::optional<AlgorithmSpec> AlgorithmSpec::parse(std::string_view id) {
  if (id == "gpbo") {
    return AlgorithmSpec{Algorithm::kGpBo, 0};
  }
  if (!id.starts_with("wbgp")) {
    return std::nullopt;
  }
  id.remove_prefix(4);
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), n);
  if (ec != std::errc{} || ptr != id.data() + id.size() || n < 1 || n > kPoolSize) {
    return std::nullopt;
  }
  return AlgorithmSpec{Algorithm::kWbgpBo, n};
}

std::string AlgorithmSpec::id() const {
  return algorithm == Algorithm::kGpBo ? "gpbo" : "wbgp" + std::to_string(n_members);
}

std::string AlgorithmSpec::label() const {
  return algorithm == Algorithm::kGpBo ? "GP-BO" : "WBGP-BO-N" + std::to_string(n_members);
}

RunConfig CampaignConfig::run_config(const AlgorithmSpec& alg, std::size_t run_index) const {
  RunConfig rc;
  rc.algorithm = alg.algorithm;
  rc.n_members = alg.n_members;
  rc.n_init = n_init;
  rc.n_iters = n_iters;
  rc.seed = run_seed(master_seed, run_index);
  rc.acquisition.xi = xi;
  return rc;
}

const RunOutcome& CampaignResult::outcome(std::size_t problem, std::size_t algorithm, std::size_t run) const {
  return runs.at((problem * algorithms.size() + algorithm) * n_runs + run);
}

const CellSummary& CampaignResult::cell(std::size_t problem, std::size_t algorithm) const {
  return cells.at(problem * algorithms.size() + algorithm);
}

const CellSummary* CampaignResult::find_cell(std::string_view problem, std::string_view algorithm_label) const {
  for (const auto& c : cells) {
    if (c.problem == problem && c.algorithm == algorithm_label) {
      return &c;
    }
  }
  return nullptr;
}

MeanStd mean_std(const std::vector<double>& xs) {
  if (xs.empty()) {
    return {std::nan(""), std::nan("")};
  }
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size()))};
}

namespace {

constexpr std::size_t kMinPairsForTest = 6;

void summarize(CampaignResult& r) {
  const auto baseline = std::find_if(r.algorithms.begin(), r.algorithms.end(),
                                     [](const AlgorithmSpec& a) { return a.algorithm == Algorithm::kGpBo; });
  const bool has_base = baseline != r.algorithms.end();
  const auto base_idx = static_cast<std::size_t>(baseline - r.algorithms.begin());

  for (std::size_t p = 0; p < r.problems.size(); ++p) {
    for (std::size_t a = 0; a < r.algorithms.size(); ++a) {
      CellSummary cell;
      cell.problem = r.problems[p];
      cell.algorithm = r.algorithms[a].label();
      for (std::size_t run = 0; run < r.n_runs; ++run) {
        const auto& o = r.outcome(p, a, run);
        if (o.trace) {
          cell.finals.push_back(o.trace->final_best());
        }
      }
      cell.complete = cell.finals.size() == r.n_runs;
      const MeanStd ms = mean_std(cell.finals);
      cell.mean = ms.mean;
      cell.std = ms.std;

      if (has_base && base_idx != a) {
        std::vector<double> mine;
        std::vector<double> base;
        for (std::size_t run = 0; run < r.n_runs; ++run) {
          const auto& o = r.outcome(p, a, run);
          const auto& b = r.outcome(p, base_idx, run);
          if (o.trace && b.trace) {
            mine.push_back(o.trace->final_best());
            base.push_back(b.trace->final_best());
          }
        }
        if (mine.size() >= kMinPairsForTest) {
          const auto w = wilcoxon_paired(mine, base);
          cell.p_value = w.p_value;
          cell.p_degenerate = w.degenerate;
        }
      }
      r.cells.push_back(std::move(cell));
    }
  }
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& cfg) {
  CampaignResult result;
  for (const auto& p : cfg.problems) {
    result.problems.push_back(p.name);
  }
  result.algorithms = cfg.algorithms;
  result.n_runs = cfg.n_runs;
  result.steps_per_run = cfg.n_init + cfg.n_iters;

  const std::size_t n_tasks = cfg.problems.size() * cfg.algorithms.size() * cfg.n_runs;
  result.runs.resize(n_tasks);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next.fetch_add(1); t < n_tasks; t = next.fetch_add(1)) {
      const std::size_t run = t % cfg.n_runs;
      const std::size_t alg = (t / cfg.n_runs) % cfg.algorithms.size();
      const std::size_t prob = t / (cfg.n_runs * cfg.algorithms.size());
      RunOutcome& out = result.runs[t];
      out.problem = prob;
      out.algorithm = alg;
      out.run = run;
      const TestProblem& problem = cfg.problems[prob];
      try {
        out.trace = run_bo([&](double u) { return problem.rescaled_eval(u); },
                           cfg.run_config(cfg.algorithms[alg], run));
      } catch (const std::exception& e) {
        out.error = e.what();
      }
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(cfg.jobs, n_tasks));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (std::size_t j = 0; j < jobs; ++j) {
      pool.emplace_back(worker);
    }
  }

  summarize(result);
  return result;
}

}  // namespace wbgp
