#include "wbgp/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace wbgp {

namespace {

constexpr std::size_t kMinPairs = 6;

struct SignedRanks {
  std::vector<long> doubled_ranks;  // 2 * midrank, always an integer
  std::vector<bool> positive;
  std::vector<std::size_t> tie_sizes;
};

SignedRanks rank_differences(const std::vector<double>& diffs) {
  const std::size_t n = diffs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return std::abs(diffs[i]) < std::abs(diffs[j]); });
  SignedRanks out;
  out.doubled_ranks.assign(n, 0);
  out.positive.assign(n, false);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && std::abs(diffs[order[j]]) == std::abs(diffs[order[i]])) {
      ++j;
    }
    // Ranks i+1 .. j share the midrank (i + 1 + j) / 2.
    const auto doubled = static_cast<long>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      out.doubled_ranks[order[k]] = doubled;
    }
    out.tie_sizes.push_back(j - i);
    i = j;
  }
  for (std::size_t k = 0; k < n; ++k) {
    out.positive[k] = diffs[k] > 0.0;
  }
  return out;
}

double exact_two_sided(const std::vector<long>& doubled_ranks, long observed) {
  const long total = std::accumulate(doubled_ranks.begin(), doubled_ranks.end(), 0L);
  // counts[s]: number of sign assignments whose positive doubled-rank sum is s.
  std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
  counts[0] = 1.0;
  long reach = 0;
  for (long r : doubled_ranks) {
    for (long s = reach; s >= 0; --s) {
      counts[static_cast<std::size_t>(s + r)] += counts[static_cast<std::size_t>(s)];
    }
    reach += r;
  }
  const double all = std::ldexp(1.0, static_cast<int>(doubled_ranks.size()));
  double lower = 0.0;
  double upper = 0.0;
  for (long s = 0; s <= total; ++s) {
    if (s <= observed) lower += counts[static_cast<std::size_t>(s)];
    if (s >= observed) upper += counts[static_cast<std::size_t>(s)];
  }
  return std::min(1.0, 2.0 * std::min(lower, upper) / all);
}

double normal_two_sided(std::size_t n, double w_plus, const std::vector<std::size_t>& tie_sizes) {
  const auto nd = static_cast<double>(n);
  const double mean = nd * (nd + 1.0) / 4.0;
  double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0;
  for (std::size_t t : tie_sizes) {
    const auto td = static_cast<double>(t);
    var -= (td * td * td - td) / 48.0;
  }
  if (!(var > 0.0)) {
    return 1.0;
  }
  const double z = std::max(0.0, std::abs(w_plus - mean) - 0.5) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

}  // namespace

WilcoxonResult wilcoxon_paired(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("wilcoxon_paired: samples differ in length");
  }
  if (a.size() < kMinPairs) {
    throw std::invalid_argument("wilcoxon_paired: need at least 6 pairs");
  }
  std::vector<double> diffs;
  diffs.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) {
      diffs.push_back(d);
    }
  }

  WilcoxonResult res;
  res.n_effective = diffs.size();
  if (diffs.empty()) {
    res.degenerate = true;
    res.p_value = 1.0;
    return res;
  }

  const SignedRanks ranks = rank_differences(diffs);
  long doubled_w = 0;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (ranks.positive[i]) {
      doubled_w += ranks.doubled_ranks[i];
    }
  }
  res.statistic = static_cast<double>(doubled_w) / 2.0;

  if (diffs.size() <= kWilcoxonExactMaxN) {
    res.exact = true;
    res.p_value = exact_two_sided(ranks.doubled_ranks, doubled_w);
  } else {
    res.p_value = normal_two_sided(diffs.size(), res.statistic, ranks.tie_sizes);
  }
  return res;
}

}  // namespace wbgp
