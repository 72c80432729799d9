#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "wbgp/wasserstein.hpp"

namespace wbgp {
namespace {

TEST(W2, UnivariateExamples) {
  EXPECT_DOUBLE_EQ(w2_squared_1d({0.0, 1.0}, {0.0, 1.0}), 0.0);
  EXPECT_DOUBLE_EQ(w2_squared_1d({0.0, 1.0}, {3.0, 1.0}), 9.0);
  EXPECT_DOUBLE_EQ(w2_squared_1d({0.0, 1.0}, {0.0, 3.0}), 4.0);
  EXPECT_DOUBLE_EQ(w2_squared_1d({1.0, 0.0}, {0.0, 0.0}), 1.0);
}

TEST(W2, MetricProperties) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> m(-5.0, 5.0);
  std::uniform_real_distribution<double> s(0.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const GaussianMeasure1D a{m(rng), s(rng)}, b{m(rng), s(rng)}, c{m(rng), s(rng)};
    const double ab = std::sqrt(w2_squared_1d(a, b));
    EXPECT_EQ(ab, std::sqrt(w2_squared_1d(b, a)));
    EXPECT_EQ(w2_squared_1d(a, a), 0.0);
    EXPECT_LE(ab, std::sqrt(w2_squared_1d(a, c)) + std::sqrt(w2_squared_1d(c, b)) + 1e-9);
  }
}

TEST(Bures, DiagonalCommutingCase) {
  Eigen::MatrixXd a = Eigen::Vector2d(4.0, 9.0).asDiagonal();
  Eigen::MatrixXd b = Eigen::Vector2d(1.0, 1.0).asDiagonal();
  // (2-1)^2 + (3-1)^2
  EXPECT_NEAR(bures_squared(a, b), 5.0, 1e-12);
  EXPECT_NEAR(bures_squared(a, a), 0.0, 1e-12);
}

TEST(Bures, RejectsInvalidCovariance) {
  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.5, 0.0, 1.0;
  EXPECT_THROW(static_cast<void>(bures_squared(asym, Eigen::MatrixXd::Identity(2, 2))), InvalidCovariance);
  Eigen::MatrixXd neg = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  EXPECT_THROW(static_cast<void>(bures_squared(Eigen::MatrixXd::Identity(2, 2), neg)), InvalidCovariance);
}

TEST(W2, MultivariateOneByOneMatchesUnivariate) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> m(-5.0, 5.0);
  std::uniform_real_distribution<double> s(0.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const GaussianMeasure1D a{m(rng), s(rng)}, b{m(rng), s(rng)};
    const GaussianMeasureND an{Eigen::VectorXd::Constant(1, a.mean), Eigen::MatrixXd::Constant(1, 1, a.std * a.std)};
    const GaussianMeasureND bn{Eigen::VectorXd::Constant(1, b.mean), Eigen::MatrixXd::Constant(1, 1, b.std * b.std)};
    EXPECT_NEAR(w2_squared_nd(an, bn), w2_squared_1d(a, b), 1e-10);
  }
}

TEST(W2, DimensionMismatchThrows) {
  const GaussianMeasureND a{Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Identity(1, 1)};
  const GaussianMeasureND b{Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Identity(2, 2)};
  EXPECT_THROW(static_cast<void>(w2_squared_nd(a, b)), std::invalid_argument);
}

TEST(Weights, Validation) {
  EXPECT_THROW(BarycenterWeights({0.5, 0.4}), std::invalid_argument);
  EXPECT_THROW(BarycenterWeights({1.5, -0.5}), std::invalid_argument);
  EXPECT_THROW(BarycenterWeights(std::vector<double>{}), std::invalid_argument);
  EXPECT_NO_THROW(BarycenterWeights::equal(7));
  const auto w = BarycenterWeights({0.5, 0.25, 0.25});
  const std::size_t drop[] = {0};
  const auto kept = w.without(drop);
  ASSERT_EQ(kept.size(), 2U);
  EXPECT_DOUBLE_EQ(kept[0], 0.5);
}

TEST(Barycenter, Examples) {
  const std::vector<GaussianMeasure1D> two{{0.0, 1.0}, {2.0, 3.0}};
  const auto eq = barycenter_1d(two, BarycenterWeights::equal(2));
  EXPECT_DOUBLE_EQ(eq.mean, 1.0);
  EXPECT_DOUBLE_EQ(eq.std, 2.0);
  const auto hot = barycenter_1d(two, BarycenterWeights::one_hot(2, 1));
  EXPECT_EQ(hot, two[1]);
  const std::vector<GaussianMeasure1D> same(5, {0.7, 0.2});
  const auto b = barycenter_1d(same, BarycenterWeights::equal(5));
  EXPECT_NEAR(b.mean, 0.7, 1e-15);
  EXPECT_NEAR(b.std, 0.2, 1e-15);
}

TEST(Barycenter, BeatsGridOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> m(-2.0, 2.0);
  std::uniform_real_distribution<double> s(0.0, 2.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<GaussianMeasure1D> ms;
    std::vector<double> w;
    double total = 0.0;
    for (int i = 0; i < 6; ++i) {
      ms.push_back({m(rng), s(rng)});
      w.push_back(u(rng) + 0.01);
      total += w.back();
    }
    for (double& x : w) x /= total;
    w.back() = 1.0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) w.back() -= w[i];
    const BarycenterWeights bw(w);
    const auto bar = barycenter_1d(ms, bw);
    const double best = barycenter_objective(ms, bw, bar);
    for (int i = 0; i < 100; ++i)
      for (int j = 0; j < 100; ++j) {
        const GaussianMeasure1D c{-2.0 + 4.0 * i / 99.0, 2.0 * j / 99.0};
        EXPECT_LE(best, barycenter_objective(ms, bw, c) + 1e-12);
      }
  }
}

TEST(Barycenter, MismatchThrows) {
  const std::vector<GaussianMeasure1D> two{{0.0, 1.0}, {2.0, 3.0}};
  EXPECT_THROW(static_cast<void>(barycenter_1d(two, BarycenterWeights::equal(3))), std::invalid_argument);
  EXPECT_THROW(static_cast<void>(barycenter_1d({}, BarycenterWeights::equal(1))), std::invalid_argument);
}

}  // namespace
}  // namespace wbgp
