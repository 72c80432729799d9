#ifndef WBGP_ENSEMBLE_HPP
#define WBGP_ENSEMBLE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wbgp/gp.hpp"
#include "wbgp/wasserstein.hpp"

namespace wbgp {

inline constexpr std::size_t kPoolAxisSize = 8;
inline constexpr std::size_t kPoolSize = kPoolAxisSize * kPoolAxisSize;
inline constexpr double kPoolLo = 0.01;
inline constexpr double kPoolHi = 0.5;

/// The fixed (signal_variance, length_scale) candidates: an 8x8 grid over
/// [0.01, 0.5]^2, row-major with signal_variance as the outer axis.
struct HyperparamPool {
  std::array<double, kPoolAxisSize> axis{};
  std::array<KernelHyperparams, kPoolSize> pairs{};
};

[[nodiscard]] HyperparamPool build_pool(double jitter = kDefaultJitter);

/// n distinct pool entries drawn uniformly without replacement. Same seed,
/// same selection. Throws std::invalid_argument if n exceeds the pool.
[[nodiscard]] std::vector<KernelHyperparams> sample_ensemble_hyperparams(const HyperparamPool& pool,
                                                                         std::size_t n,
                                                                         std::uint64_t seed);

/// N fixed-hyperparameter GPs sharing one Dataset. The pointwise surrogate is
/// the Wasserstein barycenter of the member posteriors.
///
/// Hyperparameters never change across refits. A member whose fit fails even
/// after jitter escalation is left out of that fit and the remaining weights
/// are renormalized.
class GPEnsemble {
 public:
  explicit GPEnsemble(std::vector<KernelHyperparams> hyperparams);
  GPEnsemble(std::vector<KernelHyperparams> hyperparams, BarycenterWeights weights);

  /// Returns a copy with every member conditioned on d. Throws FitError only
  /// if no member can be fitted.
  [[nodiscard]] GPEnsemble refit(const Dataset& d) const;

  [[nodiscard]] bool fitted() const noexcept { return !members_.empty(); }

  [[nodiscard]] std::vector<PosteriorGaussian> member_posteriors(double x) const;
  [[nodiscard]] PosteriorGaussian barycenter_posterior(double x) const;
  [[nodiscard]] std::vector<PosteriorGaussian> barycenter_posterior(std::span<const double> xs) const;

  /// LCB of the barycenter: mu_bar - xi * sigma_bar.
  [[nodiscard]] double lcb(double x, double xi) const;
  /// Weighted mean of the member LCBs, computed member by member.
  [[nodiscard]] double mean_member_lcb(double x, double xi) const;
  [[nodiscard]] double ucb(double x, double xi) const;
  [[nodiscard]] double mean_member_ucb(double x, double xi) const;

  [[nodiscard]] std::span<const KernelHyperparams> hyperparams() const noexcept { return hyper_; }
  [[nodiscard]] std::span<const FittedGP> members() const noexcept { return members_; }
  /// Weights over the configured hyperparameters.
  [[nodiscard]] const BarycenterWeights& weights() const noexcept { return weights_; }
  /// Weights over the currently fitted members.
  [[nodiscard]] const BarycenterWeights& active_weights() const noexcept {
    return active_weights_ ? *active_weights_ : weights_;
  }
  /// Indices into hyperparams() of members dropped during the last refit.
  [[nodiscard]] std::span<const std::size_t> dropped() const noexcept { return dropped_; }

 private:
  std::vector<KernelHyperparams> hyper_;
  BarycenterWeights weights_;
  std::vector<FittedGP> members_;
  std::optional<BarycenterWeights> active_weights_;
  std::vector<std::size_t> dropped_;
};

}  // namespace wbgp

#endif  // WBGP_ENSEMBLE_HPP
