#ifndef WBGP_WASSERSTEIN_HPP
#define WBGP_WASSERSTEIN_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace wbgp {

struct GaussianMeasure1D {
  double mean = 0.0;
  double std = 0.0;

  friend bool operator==(const GaussianMeasure1D&, const GaussianMeasure1D&) = default;
};

struct GaussianMeasureND {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

/// Covariance that is not symmetric or has an eigenvalue below -1e-10.
class InvalidCovariance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Barycentric coordinates: nonnegative, summing to 1 within 1e-12.
class BarycenterWeights {
 public:
  explicit BarycenterWeights(std::vector<double> weights);

  static BarycenterWeights equal(std::size_t n);
  static BarycenterWeights one_hot(std::size_t n, std::size_t index);

  [[nodiscard]] std::span<const double> values() const noexcept { return weights_; }
  [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return weights_[i]; }
  [[nodiscard]] bool is_equal() const noexcept { return equal_; }

  /// Removes the listed entries and rescales the rest to sum to 1.
  [[nodiscard]] BarycenterWeights without(std::span<const std::size_t> dropped) const;

 private:
  std::vector<double> weights_;
  bool equal_ = false;
};

/// (m_a - m_b)^2 + (s_a - s_b)^2
[[nodiscard]] double w2_squared_1d(const GaussianMeasure1D& a, const GaussianMeasure1D& b) noexcept;

/// Principal square root of a symmetric PSD matrix via eigendecomposition,
/// negative eigenvalues clamped to zero.
[[nodiscard]] Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& a);

/// Squared Bures distance tr(A + B - 2 (A^1/2 B A^1/2)^1/2), clamped at 0.
[[nodiscard]] double bures_squared(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// ||m_a - m_b||^2 + bures_squared(S_a, S_b). Throws std::invalid_argument on
/// a dimension mismatch.
[[nodiscard]] double w2_squared_nd(const GaussianMeasureND& a, const GaussianMeasureND& b);

/// Weighted 2-Wasserstein barycenter of univariate Gaussians: the weighted
/// mean of the means and of the standard deviations.
[[nodiscard]] GaussianMeasure1D barycenter_1d(std::span<const GaussianMeasure1D> measures,
                                              const BarycenterWeights& weights);

/// sum_i w_i * w2_squared_1d(candidate, measures[i]); the quantity the
/// barycenter minimizes.
[[nodiscard]] double barycenter_objective(std::span<const GaussianMeasure1D> measures,
                                          const BarycenterWeights& weights,
                                          const GaussianMeasure1D& candidate);

}  // namespace wbgp

#endif  // WBGP_WASSERSTEIN_HPP
