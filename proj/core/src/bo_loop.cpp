#include "wbgp/bo_loop.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "wbgp/ensemble.hpp"
#include "wbgp/seeding.hpp"

namespace wbgp {

const char* to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::kGpBo:
      return "GP-BO";
    case Algorithm::kWbgpBo:
      return "WBGP-BO";
  }
  return "?";
}

void RunConfig::validate() const {
  if (n_init < 1) {
    throw std::invalid_argument("RunConfig: n_init must be >= 1");
  }
  if (algorithm == Algorithm::kWbgpBo && (n_members < 1 || n_members > kPoolSize)) {
    throw std::invalid_argument("RunConfig: n_members must be in [1, " + std::to_string(kPoolSize) + "]");
  }
  acquisition.validate();
}

std::vector<double> lhs_init(std::size_t n, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("lhs_init: n must be >= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double width = 1.0 / static_cast<double>(n);
  std::vector<double> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = static_cast<double>(i) * width;
    pts[i] = std::min(lo + unit(rng) * width, 1.0);
  }
  for (std::size_t i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i);
    std::swap(pts[i], pts[pick(rng)]);
  }
  return pts;
}

namespace {

using Clock = std::chrono::steady_clock;

class TraceRecorder {
 public:
  explicit TraceRecorder(const Objective& f) : f_(f) {}

  void evaluate(double x, Clock::time_point started) {
    const double y = f_(x);
    trace_.queries.push_back(x);
    trace_.values.push_back(y);
    data_.append(x, y);
    const double prev = trace_.best_so_far.empty() ? y : trace_.best_so_far.back();
    trace_.best_so_far.push_back(std::min(prev, y));
    trace_.wall_times.push_back(std::chrono::duration<double>(Clock::now() - started).count());
  }

  [[nodiscard]] const Dataset& data() const noexcept { return data_; }
  [[nodiscard]] RunTrace take() { return std::move(trace_); }

 private:
  const Objective& f_;
  Dataset data_;
  RunTrace trace_;
};

// Shared skeleton: LHS design, then n_iters rounds of `propose(data)`.
template <typename Propose>
RunTrace run_loop(const Objective& f, const RunConfig& cfg, Propose&& propose) {
  cfg.validate();
  TraceRecorder rec(f);
  for (double x : lhs_init(cfg.n_init, stream_seed(cfg.seed, SeedStream::kLhs))) {
    rec.evaluate(x, Clock::now());
  }
  for (std::size_t it = 0; it < cfg.n_iters; ++it) {
    const auto started = Clock::now();
    double next = 0.0;
    try {
      next = propose(rec.data());
    } catch (const FitError& e) {
      throw RunError(std::string(to_string(cfg.algorithm)) + " iteration " + std::to_string(it) + ": " + e.what(),
                     it);
    }
    rec.evaluate(next, started);
  }
  return rec.take();
}

}  // namespace

RunTrace run_gp_bo(const Objective& f, const RunConfig& cfg) {
  return run_loop(f, cfg, [&](const Dataset& d) {
    const KernelHyperparams h = mle_fit(d, cfg.mle_box);
    const FittedGP gp = fit_gp_escalating(h, d);
    return optimize_acquisition([&](std::span<const double> xs) { return gp.posterior(xs); }, cfg.acquisition).x;
  });
}

RunTrace run_fixed_gp_bo(const Objective& f, const RunConfig& cfg, const KernelHyperparams& h) {
  return run_loop(f, cfg, [&](const Dataset& d) {
    const FittedGP gp = fit_gp_escalating(h, d);
    return optimize_acquisition([&](std::span<const double> xs) { return gp.posterior(xs); }, cfg.acquisition).x;
  });
}

RunTrace run_wbgp_bo(const Objective& f, const RunConfig& cfg) {
  cfg.validate();
  std::vector<KernelHyperparams> members;
  if (cfg.forced_member_hyperparams) {
    members.assign(cfg.n_members, *cfg.forced_member_hyperparams);
  } else {
    members = sample_ensemble_hyperparams(build_pool(), cfg.n_members, stream_seed(cfg.seed, SeedStream::kEnsemble));
  }
  const GPEnsemble prior(std::move(members));
  return run_loop(f, cfg, [&](const Dataset& d) {
    const GPEnsemble ens = prior.refit(d);
    return optimize_acquisition([&](std::span<const double> xs) { return ens.barycenter_posterior(xs); },
                                cfg.acquisition)
        .x;
  });
}

RunTrace run_bo(const Objective& f, const RunConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::kGpBo:
      return run_gp_bo(f, cfg);
    case Algorithm::kWbgpBo:
      return run_wbgp_bo(f, cfg);
  }
  throw std::invalid_argument("run_bo: unknown algorithm");
}

}  // namespace wbgp
