#include "wbgp/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace wbgp {

namespace {

constexpr double kWeightSumTol = 1e-12;
constexpr double kSymmetryTol = 1e-10;
constexpr double kEigenTol = 1e-10;

}  // namespace

BarycenterWeights::BarycenterWeights(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw std::invalid_argument("BarycenterWeights: empty");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) {
      throw std::invalid_argument("BarycenterWeights: negative or NaN weight");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw std::invalid_argument("BarycenterWeights: weights sum to " + std::to_string(sum));
  }
  equal_ = std::all_of(weights_.begin(), weights_.end(), [&](double w) { return w == weights_.front(); });
}

BarycenterWeights BarycenterWeights::equal(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("BarycenterWeights::equal: n == 0");
  }
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  // n * (1/n) can drift from 1 by a few ulps; well inside tolerance.
  return BarycenterWeights(std::move(w));
}

BarycenterWeights BarycenterWeights::one_hot(std::size_t n, std::size_t index) {
  if (index >= n) {
    throw std::out_of_range("BarycenterWeights::one_hot: index out of range");
  }
  std::vector<double> w(n, 0.0);
  w[index] = 1.0;
  return BarycenterWeights(std::move(w));
}

BarycenterWeights BarycenterWeights::without(std::span<const std::size_t> dropped) const {
  std::vector<bool> drop(weights_.size(), false);
  for (std::size_t i : dropped) {
    drop.at(i) = true;
  }
  std::vector<double> kept;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!drop[i]) {
      kept.push_back(weights_[i]);
    }
  }
  if (kept.empty()) {
    throw std::invalid_argument("BarycenterWeights::without: nothing left");
  }
  if (equal_) {
    return equal(kept.size());
  }
  const double total = std::accumulate(kept.begin(), kept.end(), 0.0);
  if (!(total > 0.0)) {
    throw std::invalid_argument("BarycenterWeights::without: remaining weights are all zero");
  }
  for (double& w : kept) {
    w /= total;
  }
  return BarycenterWeights(std::move(kept));
}

double w2_squared_1d(const GaussianMeasure1D& a, const GaussianMeasure1D& b) noexcept {
  const double dm = a.mean - b.mean;
  const double ds = a.std - b.std;
  return dm * dm + ds * ds;
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw InvalidCovariance("psd_sqrt: matrix is not square");
  }
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    throw InvalidCovariance("psd_sqrt: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (a + a.transpose()));
  if (eig.info() != Eigen::Success) {
    throw InvalidCovariance("psd_sqrt: eigendecomposition failed");
  }
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  if (lambda.size() > 0 && lambda.minCoeff() < -kEigenTol) {
    throw InvalidCovariance("psd_sqrt: negative eigenvalue " + std::to_string(lambda.minCoeff()));
  }
  const Eigen::VectorXd root = lambda.cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
}

double bures_squared(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("bures_squared: dimension mismatch");
  }
  const Eigen::MatrixXd a_half = psd_sqrt(a);
  static_cast<void>(psd_sqrt(b));  // validates b
  Eigen::MatrixXd inner = a_half * b * a_half;
  inner = 0.5 * (inner + inner.transpose());
  const double cross = psd_sqrt(inner).trace();
  return std::max(0.0, a.trace() + b.trace() - 2.0 * cross);
}

double w2_squared_nd(const GaussianMeasureND& a, const GaussianMeasureND& b) {
  if (a.mean.size() != b.mean.size() || a.covariance.rows() != a.mean.size() ||
      b.covariance.rows() != b.mean.size()) {
    throw std::invalid_argument("w2_squared_nd: dimension mismatch");
  }
  return (a.mean - b.mean).squaredNorm() + bures_squared(a.covariance, b.covariance);
}

GaussianMeasure1D barycenter_1d(std::span<const GaussianMeasure1D> measures,
                                const BarycenterWeights& weights) {
  if (measures.empty()) {
    throw std::invalid_argument("barycenter_1d: no measures");
  }
  if (measures.size() != weights.size()) {
    throw std::invalid_argument("barycenter_1d: weight/measure count mismatch");
  }
  if (weights.is_equal()) {
    // Plain averages: this is exactly the closed form with lambda_i = 1/N and
    // keeps the result independent of how 1/N rounds.
    double mean = 0.0;
    double std = 0.0;
    for (const auto& m : measures) {
      mean += m.mean;
      std += m.std;
    }
    const auto n = static_cast<double>(measures.size());
    return {mean / n, std / n};
  }
  GaussianMeasure1D out{0.0, 0.0};
  for (std::size_t i = 0; i < measures.size(); ++i) {
    out.mean += weights[i] * measures[i].mean;
    out.std += weights[i] * measures[i].std;
  }
  return out;
}

double barycenter_objective(std::span<const GaussianMeasure1D> measures,
                            const BarycenterWeights& weights, const GaussianMeasure1D& candidate) {
  if (measures.size() != weights.size()) {
    throw std::invalid_argument("barycenter_objective: weight/measure count mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    total += weights[i] * w2_squared_1d(candidate, measures[i]);
  }
  return total;
}

}  // namespace wbgp
