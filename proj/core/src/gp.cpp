#include "wbgp/gp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace wbgp {

namespace {

constexpr std::size_t kMleGridPerAxis = 8;
constexpr std::size_t kMleLineSearchIters = 50;
constexpr std::size_t kMleSweeps = 2;
constexpr double kInvPhi = 0.6180339887498948482;  // 1/phi

}  // namespace

void Dataset::validate() const {
  if (locations.size() != values.size()) {
    throw std::invalid_argument("Dataset: locations and values differ in length");
  }
  for (double x : locations) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument("Dataset: location " + std::to_string(x) + " outside [0, 1]");
    }
  }
}

void KernelHyperparams::validate() const {
  if (!(signal_variance > 0.0) || !(length_scale > 0.0) || !(jitter >= 0.0)) {
    throw std::invalid_argument("KernelHyperparams: need signal_variance > 0, length_scale > 0, jitter >= 0");
  }
}

double kernel_eval(const KernelHyperparams& h, double x, double x2) noexcept {
  const double d = x - x2;
  return h.signal_variance * std::exp(-(d * d) / (2.0 * h.length_scale * h.length_scale));
}

FittedGP FittedGP::fit(const KernelHyperparams& h, const Dataset& d) {
  h.validate();
  d.validate();
  if (d.empty()) {
    throw std::invalid_argument("fit_gp: empty dataset");
  }

  const auto n = static_cast<Eigen::Index>(d.size());
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gram(i, i) = h.signal_variance + h.jitter;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double k = kernel_eval(h, d.locations[i], d.locations[j]);
      gram(i, j) = k;
      gram(j, i) = k;
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw FitError("fit_gp: K + jitter*I not positive definite (jitter=" +
                   std::to_string(h.jitter) + ", n=" + std::to_string(n) + ")");
  }

  FittedGP g;
  g.hyper_ = h;
  g.data_ = d;
  g.chol_ = llt.matrixL();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(g.chol_(i, i) > 0.0) || !std::isfinite(g.chol_(i, i))) {
      throw FitError("fit_gp: non-positive Cholesky pivot");
    }
  }
  const Eigen::Map<const Eigen::VectorXd> y(d.values.data(), n);
  g.alpha_ = llt.solve(y);
  return g;
}

Eigen::VectorXd FittedGP::cross_covariance(double x) const {
  const auto n = static_cast<Eigen::Index>(data_.size());
  Eigen::VectorXd k(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i) = kernel_eval(hyper_, x, data_.locations[i]);
  }
  return k;
}

double FittedGP::raw_variance(double x) const {
  Eigen::VectorXd v = cross_covariance(x);
  chol_.triangularView<Eigen::Lower>().solveInPlace(v);
  return hyper_.signal_variance - v.squaredNorm();
}

PosteriorGaussian FittedGP::posterior(double x) const {
  Eigen::VectorXd k = cross_covariance(x);
  const double mean = k.dot(alpha_);
  chol_.triangularView<Eigen::Lower>().solveInPlace(k);
  const double var = hyper_.signal_variance - k.squaredNorm();
  return {mean, std::sqrt(std::max(var, 0.0))};
}

std::vector<PosteriorGaussian> FittedGP::posterior(std::span<const double> xs) const {
  const auto n = static_cast<Eigen::Index>(data_.size());
  const auto m = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd cross(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      cross(i, j) = kernel_eval(hyper_, xs[j], data_.locations[i]);
    }
  }
  const Eigen::VectorXd means = cross.transpose() * alpha_;
  chol_.triangularView<Eigen::Lower>().solveInPlace(cross);
  std::vector<PosteriorGaussian> out(xs.size());
  for (Eigen::Index j = 0; j < m; ++j) {
    const double var = hyper_.signal_variance - cross.col(j).squaredNorm();
    out[j] = {means(j), std::sqrt(std::max(var, 0.0))};
  }
  return out;
}

double FittedGP::log_marginal_likelihood() const {
  const auto n = static_cast<Eigen::Index>(data_.size());
  const Eigen::Map<const Eigen::VectorXd> y(data_.values.data(), n);
  const double fit_term = -0.5 * y.dot(alpha_);
  const double log_det_half = chol_.diagonal().array().log().sum();
  return fit_term - log_det_half - 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
}

FittedGP fit_gp_escalating(const KernelHyperparams& h, const Dataset& d) {
  KernelHyperparams attempt = h;
  for (;;) {
    try {
      return FittedGP::fit(attempt, d);
    } catch (const FitError&) {
      const double next = attempt.jitter > 0.0 ? attempt.jitter * 10.0 : kDefaultJitter;
      if (attempt.jitter >= kMaxJitter || next > kMaxJitter * (1.0 + 1e-9)) {
        throw FitError("fit_gp: factorization failed up to jitter " + std::to_string(attempt.jitter) +
                       " (signal_variance=" + std::to_string(h.signal_variance) +
                       ", length_scale=" + std::to_string(h.length_scale) + ")");
      }
      attempt.jitter = std::min(next, kMaxJitter);
    }
  }
}

void HyperparamBox::validate() const {
  if (!(signal_variance_lo > 0.0) || !(signal_variance_hi >= signal_variance_lo) ||
      !(length_scale_lo > 0.0) || !(length_scale_hi >= length_scale_lo)) {
    throw std::invalid_argument("HyperparamBox: need 0 < lo <= hi on both axes");
  }
}

double log_marginal_likelihood_or_neg_inf(const KernelHyperparams& h, const Dataset& d) {
  try {
    return FittedGP::fit(h, d).log_marginal_likelihood();
  } catch (const FitError&) {
    return -std::numeric_limits<double>::infinity();
  }
}

namespace {

std::array<double, kMleGridPerAxis> axis_nodes(double lo, double hi) {
  std::array<double, kMleGridPerAxis> nodes{};
  const double step = (hi - lo) / static_cast<double>(kMleGridPerAxis - 1);
  for (std::size_t i = 0; i < kMleGridPerAxis; ++i) {
    nodes[i] = lo + step * static_cast<double>(i);
  }
  nodes.back() = hi;
  return nodes;
}

struct Scored {
  KernelHyperparams h;
  double lml = -std::numeric_limits<double>::infinity();
};

// Golden-section maximization of f over [lo, hi] in log-space. The endpoints
// and the incumbent are candidates too, so bounds are reachable exactly.
template <typename F>
std::pair<double, double> golden_max_log(F&& f, double lo, double hi, double incumbent,
                                         double incumbent_value) {
  double best_x = incumbent;
  double best_v = incumbent_value;
  auto consider = [&](double x, double v) {
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  };
  if (hi <= lo) {
    return {best_x, best_v};
  }
  consider(lo, f(lo));
  consider(hi, f(hi));

  double a = std::log(lo);
  double b = std::log(hi);
  double c = b - kInvPhi * (b - a);
  double e = a + kInvPhi * (b - a);
  double fc = f(std::exp(c));
  double fe = f(std::exp(e));
  for (std::size_t it = 0; it < kMleLineSearchIters; ++it) {
    if (fc >= fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - kInvPhi * (b - a);
      fc = f(std::exp(c));
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + kInvPhi * (b - a);
      fe = f(std::exp(e));
    }
  }
  consider(std::exp(c), fc);
  consider(std::exp(e), fe);
  return {best_x, best_v};
}

Scored mle_once(const Dataset& d, const HyperparamBox& box, double jitter) {
  const auto sv_nodes = axis_nodes(box.signal_variance_lo, box.signal_variance_hi);
  const auto ls_nodes = axis_nodes(box.length_scale_lo, box.length_scale_hi);

  Scored best;
  std::size_t best_i = 0;
  std::size_t best_j = 0;
  for (std::size_t i = 0; i < kMleGridPerAxis; ++i) {
    for (std::size_t j = 0; j < kMleGridPerAxis; ++j) {
      const KernelHyperparams h{sv_nodes[i], ls_nodes[j], jitter};
      const double lml = log_marginal_likelihood_or_neg_inf(h, d);
      if (lml > best.lml) {
        best = {h, lml};
        best_i = i;
        best_j = j;
      }
    }
  }
  if (!std::isfinite(best.lml)) {
    return best;
  }

  const double sv_lo = sv_nodes[best_i == 0 ? 0 : best_i - 1];
  const double sv_hi = sv_nodes[std::min(best_i + 1, kMleGridPerAxis - 1)];
  const double ls_lo = ls_nodes[best_j == 0 ? 0 : best_j - 1];
  const double ls_hi = ls_nodes[std::min(best_j + 1, kMleGridPerAxis - 1)];

  for (std::size_t sweep = 0; sweep < kMleSweeps; ++sweep) {
    auto [sv, v1] = golden_max_log(
        [&](double s) { return log_marginal_likelihood_or_neg_inf({s, best.h.length_scale, jitter}, d); },
        sv_lo, sv_hi, best.h.signal_variance, best.lml);
    best = {{sv, best.h.length_scale, jitter}, v1};
    auto [ls, v2] = golden_max_log(
        [&](double l) { return log_marginal_likelihood_or_neg_inf({best.h.signal_variance, l, jitter}, d); },
        ls_lo, ls_hi, best.h.length_scale, best.lml);
    best = {{best.h.signal_variance, ls, jitter}, v2};
  }
  return best;
}

}  // namespace

KernelHyperparams mle_fit(const Dataset& d, const HyperparamBox& box, double jitter) {
  box.validate();
  d.validate();
  if (d.empty()) {
    throw std::invalid_argument("mle_fit: empty dataset");
  }
  Scored best = mle_once(d, box, jitter);
  if (!std::isfinite(best.lml)) {
    best = mle_once(d, box, jitter > 0.0 ? std::min(jitter * 10.0, kMaxJitter) : kDefaultJitter);
  }
  if (!std::isfinite(best.lml)) {
    throw FitError("mle_fit: no hyperparameter pair in the box admits a factorization");
  }
  return best.h;
}

}  // namespace wbgp
