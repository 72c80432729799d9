#ifndef WBGP_GP_HPP
#define WBGP_GP_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wbgp {

/// Default nugget added to the Gram diagonal. The benchmark objectives are
/// noise-free; this only keeps the Cholesky factorization well conditioned.
inline constexpr double kDefaultJitter = 1e-6;
/// Jitter escalation stops here (factor 10 per attempt).
inline constexpr double kMaxJitter = 1e-2;

/// Raised when K + jitter*I cannot be factorized.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Observations on the rescaled search space [0, 1].
struct Dataset {
  std::vector<double> locations;
  std::vector<double> values;

  [[nodiscard]] std::size_t size() const noexcept { return locations.size(); }
  [[nodiscard]] bool empty() const noexcept { return locations.empty(); }

  void append(double x, double y) {
    locations.push_back(x);
    values.push_back(y);
  }

  /// Throws std::invalid_argument on length mismatch or a location outside [0, 1].
  void validate() const;
};

/// Squared-exponential kernel parameters: sigma_f^2, length-scale and nugget.
struct KernelHyperparams {
  double signal_variance = 1.0;
  double length_scale = 1.0;
  double jitter = kDefaultJitter;

  void validate() const;

  friend bool operator==(const KernelHyperparams&, const KernelHyperparams&) = default;
};

/// k(x, x') = sigma_f^2 exp(-(x - x')^2 / (2 l^2))
[[nodiscard]] double kernel_eval(const KernelHyperparams& h, double x, double x2) noexcept;

/// Pointwise predictive distribution N(mean, std^2).
struct PosteriorGaussian {
  double mean = 0.0;
  double std = 0.0;
};

/// A zero-prior-mean GP conditioned on a Dataset. Immutable once built.
class FittedGP {
 public:
  /// Builds the Gram matrix and factorizes K + jitter*I. Throws FitError if
  /// the factorization fails; no jitter escalation happens here.
  static FittedGP fit(const KernelHyperparams& h, const Dataset& d);

  [[nodiscard]] PosteriorGaussian posterior(double x) const;
  [[nodiscard]] std::vector<PosteriorGaussian> posterior(std::span<const double> xs) const;

  /// Predictive variance before clamping at zero.
  [[nodiscard]] double raw_variance(double x) const;

  /// -1/2 y^T alpha - sum log L_ii - n/2 log(2 pi)
  [[nodiscard]] double log_marginal_likelihood() const;

  [[nodiscard]] const KernelHyperparams& hyperparams() const noexcept { return hyper_; }
  [[nodiscard]] const Dataset& data() const noexcept { return data_; }
  [[nodiscard]] const Eigen::MatrixXd& chol_factor() const noexcept { return chol_; }
  [[nodiscard]] const Eigen::VectorXd& alpha() const noexcept { return alpha_; }

 private:
  FittedGP() = default;

  [[nodiscard]] Eigen::VectorXd cross_covariance(double x) const;

  KernelHyperparams hyper_;
  Dataset data_;
  Eigen::MatrixXd chol_;
  Eigen::VectorXd alpha_;
};

[[nodiscard]] inline FittedGP fit_gp(const KernelHyperparams& h, const Dataset& d) {
  return FittedGP::fit(h, d);
}

/// Retries fit_gp with jitter multiplied by 10 until kMaxJitter. The returned
/// model records the jitter that succeeded.
[[nodiscard]] FittedGP fit_gp_escalating(const KernelHyperparams& h, const Dataset& d);

/// Box for (signal_variance, length_scale).
struct HyperparamBox {
  double signal_variance_lo = 0.01;
  double signal_variance_hi = 0.5;
  double length_scale_lo = 0.01;
  double length_scale_hi = 0.5;

  void validate() const;
};

/// Maximum-likelihood (signal_variance, length_scale) inside the box.
///
/// Scores an 8x8 grid spanning the box, then refines around the best grid
/// node with alternating golden-section line searches in log-space. The
/// refinement never returns a worse point than the best grid node.
/// If every grid node fails to factorize, jitter is raised 10x and the grid
/// is retried once before a FitError is thrown.
[[nodiscard]] KernelHyperparams mle_fit(const Dataset& d, const HyperparamBox& box = {},
                                        double jitter = kDefaultJitter);

/// Log marginal likelihood of d under h, or -infinity if K + jitter*I is not
/// positive definite.
[[nodiscard]] double log_marginal_likelihood_or_neg_inf(const KernelHyperparams& h,
                                                         const Dataset& d);

}  // namespace wbgp

#endif  // WBGP_GP_HPP
