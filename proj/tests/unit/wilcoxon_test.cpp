#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wbgp/wilcoxon.hpp"

namespace wbgp {
namespace {

WilcoxonResult from_diffs(const std::vector<double>& d) {
  const std::vector<double> zero(d.size(), 0.0);
  return wilcoxon_paired(d, zero);
}

TEST(Wilcoxon, AllPositiveSix) {
  const auto r = from_diffs({1, 2, 3, 4, 5, 6});
  EXPECT_NEAR(r.p_value, 0.03125, 1e-12);
  EXPECT_EQ(r.statistic, 21.0);
  EXPECT_TRUE(r.exact);
}

TEST(Wilcoxon, Degenerate) {
  const std::vector<double> a{1, 2, 3, 4, 5, 6, 7};
  const auto r = wilcoxon_paired(a, a);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_EQ(r.n_effective, 0U);
}

TEST(Wilcoxon, TenPairHandExample) {
  // |d| ranks 1..10, positives at ranks 2,5,9,10 -> W+ = 26.
  const std::vector<double> d{-0.1, 0.2, -0.3, -0.4, 0.5, -0.6, -0.7, -0.8, 0.9, 1.0};
  const auto r = from_diffs(d);
  EXPECT_EQ(r.statistic, 26.0);
  EXPECT_NEAR(r.p_value, testing::enumerate_signed_rank_p(d), 1e-6);
}

TEST(Wilcoxon, MatchesEnumerationWithTiesAndZeros) {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<int> v(-4, 4);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> d(6 + t % 7);
    for (double& x : d) x = v(rng);
    if (std::all_of(d.begin(), d.end(), [](double x) { return x == 0.0; })) continue;
    EXPECT_NEAR(from_diffs(d).p_value, testing::enumerate_signed_rank_p(d), 1e-6);
  }
}

TEST(Wilcoxon, SymmetricInArguments) {
  const std::vector<double> a{0.3, 1.2, -0.4, 2.2, 0.9, 1.1, 0.0, 0.5};
  const std::vector<double> b{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  EXPECT_DOUBLE_EQ(wilcoxon_paired(a, b).p_value, wilcoxon_paired(b, a).p_value);
}

TEST(Wilcoxon, NormalApproximationForLargeN) {
  std::vector<double> d;
  for (int i = 1; i <= 30; ++i) d.push_back(i % 3 == 0 ? -i : i);
  const auto r = from_diffs(d);
  EXPECT_FALSE(r.exact);
  EXPECT_GT(r.p_value, 0.0);
  EXPECT_LE(r.p_value, 1.0);
  std::vector<double> pos(30);
  for (int i = 0; i < 30; ++i) pos[i] = i + 1;
  EXPECT_LT(from_diffs(pos).p_value, 1e-5);
}

TEST(Wilcoxon, InputValidation) {
  const std::vector<double> five(5, 1.0), six(6, 1.0);
  EXPECT_THROW(static_cast<void>(wilcoxon_paired(five, five)), std::invalid_argument);
  EXPECT_THROW(static_cast<void>(wilcoxon_paired(six, five)), std::invalid_argument);
}

}  // namespace
}  // namespace wbgp
