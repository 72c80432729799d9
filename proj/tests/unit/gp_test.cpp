#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wbgp/ensemble.hpp"
#include "wbgp/gp.hpp"

namespace wbgp {
namespace {

Dataset random_dataset(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> y(0.0, 1.0);
  Dataset d;
  for (std::size_t i = 0; i < n; ++i) d.append(u(rng), y(rng));
  return d;
}

TEST(Kernel, Values) {
  EXPECT_DOUBLE_EQ(kernel_eval({1.0, 1.0, 0.0}, 0.3, 0.3), 1.0);
  EXPECT_NEAR(kernel_eval({1.0, 1.0, 0.0}, 0.0, 1.0), std::exp(-0.5), 1e-15);
  EXPECT_NEAR(kernel_eval({0.5, 0.1, 0.0}, 0.0, 0.1), 0.5 * std::exp(-0.5), 1e-15);
}

TEST(Kernel, Symmetric) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const KernelHyperparams h{0.01 + u(rng), 0.01 + u(rng), 0.0};
    const double a = u(rng), b = u(rng);
    EXPECT_EQ(kernel_eval(h, a, b), kernel_eval(h, b, a));
  }
}

TEST(Hyperparams, Validation) {
  EXPECT_THROW((KernelHyperparams{0.0, 1.0, 0.0}).validate(), std::invalid_argument);
  EXPECT_THROW((KernelHyperparams{1.0, -1.0, 0.0}).validate(), std::invalid_argument);
  EXPECT_THROW((KernelHyperparams{1.0, 1.0, -1e-9}).validate(), std::invalid_argument);
  EXPECT_NO_THROW((KernelHyperparams{1.0, 1.0, 0.0}).validate());
}

TEST(Dataset, Validation) {
  Dataset d;
  d.append(1.5, 0.0);
  EXPECT_THROW(d.validate(), std::invalid_argument);
  Dataset e{{0.1, 0.2}, {1.0}};
  EXPECT_THROW(e.validate(), std::invalid_argument);
}

TEST(FitGp, SingleObservation) {
  Dataset d;
  d.append(0.5, 2.0);
  const auto gp = fit_gp({1.0, 1.0, 0.0}, d);
  EXPECT_NEAR(gp.chol_factor()(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(gp.alpha()(0), 2.0, 1e-15);
}

TEST(FitGp, CoincidentPointsWithoutJitterFail) {
  Dataset d;
  d.append(0.3, 1.0);
  d.append(0.3, 1.0);
  EXPECT_THROW(static_cast<void>(fit_gp({1.0, 0.2, 0.0}, d)), FitError);
  EXPECT_NO_THROW(static_cast<void>(fit_gp({1.0, 0.2, 1e-6}, d)));
}

TEST(FitGp, EscalationRecordsJitter) {
  Dataset d;
  d.append(0.3, 1.0);
  d.append(0.3, 1.0);
  const auto gp = fit_gp_escalating({1.0, 0.2, 0.0}, d);
  EXPECT_GT(gp.hyperparams().jitter, 0.0);
  EXPECT_LE(gp.hyperparams().jitter, kMaxJitter);
}

TEST(FitGp, EveryPoolEntryFactorizesAFiveDesign) {
  Dataset d;
  for (double x : {0.05, 0.27, 0.41, 0.66, 0.93}) d.append(x, std::sin(6.0 * x));
  for (const auto& h : build_pool().pairs) {
    const auto gp = fit_gp(h, d);
    const auto& l = gp.chol_factor();
    const Eigen::MatrixXd rebuilt = l * l.transpose();
    for (Eigen::Index i = 0; i < rebuilt.rows(); ++i)
      for (Eigen::Index j = 0; j < rebuilt.cols(); ++j) {
        const double k = kernel_eval(h, d.locations[i], d.locations[j]) + (i == j ? h.jitter : 0.0);
        EXPECT_NEAR(rebuilt(i, j), k, 1e-8);
      }
  }
}

TEST(Posterior, InterpolatesTrainingPoints) {
  Dataset d;
  d.append(0.1, 0.4);
  d.append(0.5, -0.3);
  d.append(0.9, 1.2);
  const auto gp = fit_gp({1.0, 0.1, 0.0}, d);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto p = gp.posterior(d.locations[i]);
    EXPECT_NEAR(p.mean, d.values[i], 1e-6);
    EXPECT_LE(p.std, 1e-4);
  }
}

TEST(Posterior, RevertsToPriorFarAway) {
  Dataset d;
  d.append(0.0, 3.0);
  const auto gp = fit_gp({0.25, 0.01, 1e-6}, d);
  const auto p = gp.posterior(1.0);
  EXPECT_NEAR(p.mean, 0.0, 1e-12);
  EXPECT_NEAR(p.std, 0.5, 1e-12);
}

TEST(Posterior, MatchesDenseOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const Dataset d = random_dataset(rng, 1 + trial % 10);
    const KernelHyperparams h{0.01 + 0.49 * u(rng), 0.05 + 0.45 * u(rng), 1e-6};
    const auto gp = fit_gp(h, d);
    for (int k = 0; k <= 10; ++k) {
      const double x = k / 10.0;
      const auto p = gp.posterior(x);
      const auto ref = testing::dense_posterior(h, d, x);
      EXPECT_NEAR(p.mean, ref.mean, 1e-8);
      EXPECT_NEAR(p.std, ref.std, 1e-8);
    }
  }
}

TEST(Posterior, BatchMatchesScalar) {
  std::mt19937_64 rng(3);
  const Dataset d = random_dataset(rng, 7);
  const auto gp = fit_gp({0.3, 0.15, 1e-6}, d);
  std::vector<double> xs;
  for (int k = 0; k <= 50; ++k) xs.push_back(k / 50.0);
  const auto batch = gp.posterior(xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto p = gp.posterior(xs[i]);
    EXPECT_NEAR(batch[i].mean, p.mean, 1e-12);
    EXPECT_NEAR(batch[i].std, p.std, 1e-12);
  }
}

TEST(Posterior, VarianceNeverMeaningfullyNegative) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset d = random_dataset(rng, 10);
    const auto gp = fit_gp_escalating({0.01 + 0.49 * u(rng), 0.01 + 0.49 * u(rng), 1e-6}, d);
    for (int k = 0; k < 20; ++k) {
      EXPECT_GE(gp.raw_variance(u(rng)), -1e-8);
    }
  }
}

TEST(LogMarginalLikelihood, SinglePoint) {
  Dataset d;
  d.append(0.5, 0.0);
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  EXPECT_NEAR(fit_gp({1.0, 1.0, 0.0}, d).log_marginal_likelihood(), -half_log_2pi, 1e-12);
  EXPECT_NEAR(-half_log_2pi, -0.918939, 1e-6);
  Dataset e;
  e.append(0.5, 2.0);
  EXPECT_NEAR(fit_gp({1.0, 1.0, 0.0}, e).log_marginal_likelihood(), -2.0 - half_log_2pi, 1e-12);
}

TEST(LogMarginalLikelihood, MatchesDenseDensity) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset d = random_dataset(rng, 5);
    const KernelHyperparams h{0.05 + 0.45 * u(rng), 0.05 + 0.45 * u(rng), 1e-4};
    EXPECT_NEAR(fit_gp(h, d).log_marginal_likelihood(), testing::dense_log_density(h, d), 1e-8);
  }
}

TEST(LogMarginalLikelihood, PermutationInvariant) {
  std::mt19937_64 rng(23);
  Dataset d = random_dataset(rng, 8);
  const KernelHyperparams h{0.3, 0.2, 1e-6};
  const double before = fit_gp(h, d).log_marginal_likelihood();
  Dataset r;
  for (std::size_t i = d.size(); i-- > 0;) r.append(d.locations[i], d.values[i]);
  EXPECT_NEAR(fit_gp(h, r).log_marginal_likelihood(), before, 1e-12 * std::abs(before));
}

TEST(LogMarginalLikelihood, NegInfOnFailure) {
  Dataset d;
  d.append(0.3, 1.0);
  d.append(0.3, 1.0);
  EXPECT_EQ(log_marginal_likelihood_or_neg_inf({1.0, 0.2, 0.0}, d), -std::numeric_limits<double>::infinity());
}

TEST(MleFit, ZeroObservationsHitSignalVarianceFloor) {
  Dataset d;
  for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) d.append(x, 0.0);
  const auto h = mle_fit(d);
  EXPECT_EQ(h.signal_variance, 0.01);
}

TEST(MleFit, SingleObservationStaysInBox) {
  Dataset d;
  d.append(0.4, 0.7);
  const auto h = mle_fit(d);
  EXPECT_GE(h.signal_variance, 0.01);
  EXPECT_LE(h.signal_variance, 0.5);
  EXPECT_GE(h.length_scale, 0.01);
  EXPECT_LE(h.length_scale, 0.5);
}

TEST(MleFit, NeverWorseThanTheGrid) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const Dataset d = random_dataset(rng, 8);
    const auto h = mle_fit(d);
    const double best = log_marginal_likelihood_or_neg_inf(h, d);
    for (const auto& g : build_pool().pairs) {
      EXPECT_GE(best, log_marginal_likelihood_or_neg_inf(g, d) - 1e-9);
    }
  }
}

TEST(MleFit, RecoversPriorLengthScale) {
  // Median over several prior draws at (sigma_f^2, l) = (0.25, 0.2).
  const KernelHyperparams truth{0.25, 0.2, 1e-8};
  std::vector<double> estimates;
  for (std::uint64_t seed = 1; seed <= 7; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> z(0.0, 1.0);
    Dataset d;
    for (int i = 0; i < 30; ++i) d.append(u(rng), 0.0);
    Eigen::MatrixXd k(30, 30);
    for (int i = 0; i < 30; ++i)
      for (int j = 0; j < 30; ++j) k(i, j) = kernel_eval(truth, d.locations[i], d.locations[j]) + (i == j ? 1e-8 : 0.0);
    const Eigen::MatrixXd l = k.llt().matrixL();
    Eigen::VectorXd e(30);
    for (int i = 0; i < 30; ++i) e(i) = z(rng);
    const Eigen::VectorXd f = l * e;
    for (int i = 0; i < 30; ++i) d.values[i] = f(i);
    estimates.push_back(mle_fit(d).length_scale);
  }
  std::sort(estimates.begin(), estimates.end());
  const double median = estimates[estimates.size() / 2];
  EXPECT_GE(median, 0.1);
  EXPECT_LE(median, 0.3);
}

}  // namespace
}  // namespace wbgp
