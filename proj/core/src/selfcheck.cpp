#include "wbgp/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "wbgp/ensemble.hpp"
#include "wbgp/gp.hpp"
#include "wbgp/problems.hpp"
#include "wbgp/wasserstein.hpp"
#include "wbgp/wilcoxon.hpp"

// The oracles below deliberately avoid the code paths they check: explicit
// matrix inverses instead of Cholesky solves, grid search instead of the
// closed-form barycenter, sign-pattern enumeration instead of the rank-sum DP.

namespace wbgp::selfcheck {

namespace {

constexpr double kTableTol = 1e-3;
constexpr double kIdentityTol = 1e-12;
constexpr double kGridSlack = 1e-12;
constexpr double kDenseTol = 1e-8;
constexpr double kTriangleSlack = 1e-9;
constexpr double kConsistencyTol = 1e-10;
constexpr double kWilcoxonTol = 1e-6;
constexpr std::size_t kGridNodes = 200;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

CheckResult make(std::string name, double worst, double tol) {
  return {std::move(name), worst <= tol, worst, "worst=" + fmt(worst) + " tol=" + fmt(tol)};
}

Dataset random_dataset(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  Dataset d;
  for (std::size_t i = 0; i < n; ++i) {
    d.append(unit(rng), normal(rng));
  }
  return d;
}

struct DensePosterior {
  double mean;
  double std;
};

// Explicit inverse in extended precision; a double-precision inverse of an
// SE Gram matrix with a 1e-6 nugget loses ~1e-8 to cancellation on its own.
DensePosterior dense_posterior(const KernelHyperparams& h, const Dataset& d, double x) {
  using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const auto n = static_cast<Eigen::Index>(d.size());
  const long double sf = h.signal_variance;
  const long double two_l2 = 2.0L * h.length_scale * h.length_scale;
  MatL k(n, n);
  VecL kx(n);
  VecL y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const long double r = static_cast<long double>(d.locations[i]) - d.locations[j];
      k(i, j) = sf * std::exp(-r * r / two_l2);
    }
    k(i, i) += h.jitter;
    const long double r = static_cast<long double>(x) - d.locations[i];
    kx(i) = sf * std::exp(-r * r / two_l2);
    y(i) = d.values[i];
  }
  const MatL inv = k.fullPivLu().inverse();
  const long double mean = kx.dot(inv * y);
  const long double var = sf - kx.dot(inv * kx);
  return {static_cast<double>(mean), std::sqrt(static_cast<double>(std::max(var, 0.0L)))};
}

double enumerated_wilcoxon_p(const std::vector<double>& diffs) {
  std::vector<double> nz;
  for (double d : diffs) {
    if (d != 0.0) nz.push_back(d);
  }
  const std::size_t n = nz.size();
  if (n == 0) return 1.0;
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    double less = 0.0;
    double same = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(nz[j]) < std::abs(nz[i])) less += 1.0;
      if (std::abs(nz[j]) == std::abs(nz[i])) same += 1.0;
    }
    rank[i] = less + (same + 1.0) / 2.0;
  }
  double total = 0.0;
  double observed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += rank[i];
    if (nz[i] > 0.0) observed += rank[i];
  }
  const double centre = total / 2.0;
  const double dev = std::abs(observed - centre);
  std::size_t extreme = 0;
  const std::size_t patterns = std::size_t{1} << n;
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) w += rank[i];
    }
    if (std::abs(w - centre) >= dev - 1e-9) ++extreme;
  }
  return static_cast<double>(extreme) / static_cast<double>(patterns);
}

}  // namespace

CheckResult table_minima() {
  double worst = 0.0;
  std::string where;
  for (const auto& p : problem_suite()) {
    const double err = std::abs(p.formula(p.known_minimizer) - p.known_minimum);
    if (err > worst) {
      worst = err;
      where = p.name;
    }
  }
  auto res = make("table minima reproduced", worst, kTableTol);
  if (!where.empty()) res.detail += " at " + where;
  return res;
}

std::vector<CheckResult> confidence_bound_identity(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> members(1, 32);
  std::uniform_int_distribution<std::size_t> points(1, 10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> xi_dist(0.01, 5.0);
  const HyperparamPool pool = build_pool();

  double worst_lcb = 0.0;
  double worst_ucb = 0.0;
  constexpr std::size_t kPointsPerEnsemble = 10;
  for (std::size_t t = 0; t < trials; t += kPointsPerEnsemble) {
    const Dataset d = random_dataset(rng, points(rng));
    const GPEnsemble ens = GPEnsemble(sample_ensemble_hyperparams(pool, members(rng), rng())).refit(d);
    for (std::size_t k = 0; k < kPointsPerEnsemble; ++k) {
      const double x = unit(rng);
      const double xi = xi_dist(rng);
      worst_lcb = std::max(worst_lcb, std::abs(ens.mean_member_lcb(x, xi) - ens.lcb(x, xi)));
      worst_ucb = std::max(worst_ucb, std::abs(ens.mean_member_ucb(x, xi) - ens.ucb(x, xi)));
    }
  }
  return {make("LCB of barycenter == mean of member LCBs", worst_lcb, kIdentityTol),
          make("UCB of barycenter == mean of member UCBs", worst_ucb, kIdentityTol)};
}

CheckResult barycenter_grid_optimality(std::size_t sets, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> count(2, 8);
  std::normal_distribution<double> mean_dist(0.0, 2.0);
  std::uniform_real_distribution<double> std_dist(0.0, 3.0);
  double worst = 0.0;
  for (std::size_t s = 0; s < sets; ++s) {
    std::vector<GaussianMeasure1D> ms(count(rng));
    for (auto& m : ms) m = {mean_dist(rng), std_dist(rng)};
    const auto w = BarycenterWeights::equal(ms.size());
    const double closed = barycenter_objective(ms, w, barycenter_1d(ms, w));

    double m_lo = ms[0].mean, m_hi = ms[0].mean, s_lo = ms[0].std, s_hi = ms[0].std;
    for (const auto& m : ms) {
      m_lo = std::min(m_lo, m.mean);
      m_hi = std::max(m_hi, m.mean);
      s_lo = std::min(s_lo, m.std);
      s_hi = std::max(s_hi, m.std);
    }
    for (std::size_t i = 0; i < kGridNodes; ++i) {
      const double gm = m_lo + (m_hi - m_lo) * static_cast<double>(i) / (kGridNodes - 1);
      for (std::size_t j = 0; j < kGridNodes; ++j) {
        const double gs = s_lo + (s_hi - s_lo) * static_cast<double>(j) / (kGridNodes - 1);
        double obj = 0.0;
        for (const auto& m : ms) {
          obj += ((gm - m.mean) * (gm - m.mean) + (gs - m.std) * (gs - m.std)) / static_cast<double>(ms.size());
        }
        worst = std::max(worst, closed - obj);
      }
    }
  }
  return make("closed-form barycenter beats 200x200 grid", worst, kGridSlack);
}

CheckResult gp_dense_oracle(std::size_t datasets, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(1, 10);
  const HyperparamPool pool = build_pool();
  std::uniform_int_distribution<std::size_t> pick(0, pool.pairs.size() - 1);
  double worst = 0.0;
  for (std::size_t t = 0; t < datasets; ++t) {
    const Dataset d = random_dataset(rng, size(rng));
    const KernelHyperparams h = pool.pairs[pick(rng)];
    const FittedGP gp = fit_gp(h, d);
    for (int k = 0; k < 10; ++k) {
      const double x = (k + 0.5) / 10.0;
      const auto fast = gp.posterior(x);
      const auto slow = dense_posterior(h, d, x);
      worst = std::max({worst, std::abs(fast.mean - slow.mean), std::abs(fast.std - slow.std)});
    }
  }
  return make("GP posterior matches explicit-inverse oracle", worst, kDenseTol);
}

std::vector<CheckResult> w2_metric(std::size_t triples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> mean_dist(0.0, 3.0);
  std::uniform_real_distribution<double> std_dist(0.0, 3.0);
  auto draw = [&] { return GaussianMeasure1D{mean_dist(rng), std_dist(rng)}; };
  auto dist = [](const GaussianMeasure1D& a, const GaussianMeasure1D& b) { return std::sqrt(w2_squared_1d(a, b)); };

  double worst_axioms = 0.0;
  double worst_consistency = 0.0;
  for (std::size_t t = 0; t < triples; ++t) {
    const auto a = draw();
    const auto b = draw();
    const auto c = draw();
    const double ab = dist(a, b);
    const double ba = dist(b, a);
    const double bc = dist(b, c);
    const double ac = dist(a, c);
    worst_axioms = std::max({worst_axioms, std::abs(ab - ba), dist(a, a), -std::min(ab, 0.0),
                             ac - (ab + bc) > 0.0 ? ac - (ab + bc) : 0.0});

    GaussianMeasureND an{Eigen::VectorXd::Constant(1, a.mean), Eigen::MatrixXd::Constant(1, 1, a.std * a.std)};
    GaussianMeasureND bn{Eigen::VectorXd::Constant(1, b.mean), Eigen::MatrixXd::Constant(1, 1, b.std * b.std)};
    worst_consistency = std::max(worst_consistency, std::abs(w2_squared_nd(an, bn) - w2_squared_1d(a, b)));
  }
  return {make("sqrt(W2^2) metric axioms", worst_axioms, kTriangleSlack),
          make("1x1 multivariate W2 == univariate W2", worst_consistency, kConsistencyTol)};
}

CheckResult wilcoxon_enumeration(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(6, 12);
  std::uniform_int_distribution<int> small(-4, 4);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (std::size_t t = 0; t < cases; ++t) {
    const std::size_t n = size(rng);
    const bool with_ties = t % 2 == 0;
    std::vector<double> a(n);
    std::vector<double> b(n, 0.0);
    for (auto& v : a) v = with_ties ? static_cast<double>(small(rng)) : normal(rng);
    const auto res = wilcoxon_paired(a, b);
    worst = std::max(worst, std::abs(res.p_value - enumerated_wilcoxon_p(a)));
  }
  return make("exact Wilcoxon p == 2^n enumeration", worst, kWilcoxonTol);
}

std::vector<CheckResult> run_all() {
  std::vector<CheckResult> out;
  out.push_back(table_minima());
  for (auto& r : confidence_bound_identity()) out.push_back(std::move(r));
  out.push_back(barycenter_grid_optimality());
  out.push_back(gp_dense_oracle());
  for (auto& r : w2_metric()) out.push_back(std::move(r));
  out.push_back(wilcoxon_enumeration());
  return out;
}

}  // namespace wbgp::selfcheck
