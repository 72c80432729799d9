#include "wbgp/ensemble.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>
#include <random>
#include <string>

namespace wbgp {

HyperparamPool build_pool(double jitter) {
  HyperparamPool pool;
  const double step = (kPoolHi - kPoolLo) / static_cast<double>(kPoolAxisSize - 1);
  for (std::size_t i = 0; i < kPoolAxisSize; ++i) {
    pool.axis[i] = kPoolLo + step * static_cast<double>(i);
  }
  pool.axis.back() = kPoolHi;
  for (std::size_t i = 0; i < kPoolAxisSize; ++i) {
    for (std::size_t j = 0; j < kPoolAxisSize; ++j) {
      pool.pairs[i * kPoolAxisSize + j] = {pool.axis[i], pool.axis[j], jitter};
    }
  }
  return pool;
}

std::vector<KernelHyperparams> sample_ensemble_hyperparams(const HyperparamPool& pool, std::size_t n,
                                                           std::uint64_t seed) {
  if (n > pool.pairs.size()) {
    throw std::invalid_argument("sample_ensemble_hyperparams: n=" + std::to_string(n) +
                                " exceeds pool size " + std::to_string(pool.pairs.size()));
  }
  std::vector<std::size_t> order(pool.pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first n slots are a uniform draw without replacement.
  for (std::size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, order.size() - 1);
    std::swap(order[i], order[pick(rng)]);
  }
  std::vector<KernelHyperparams> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(pool.pairs[order[i]]);
  }
  return out;
}

GPEnsemble::GPEnsemble(std::vector<KernelHyperparams> hyperparams)
    : GPEnsemble(hyperparams, BarycenterWeights::equal(hyperparams.size())) {}

GPEnsemble::GPEnsemble(std::vector<KernelHyperparams> hyperparams, BarycenterWeights weights)
    : hyper_(std::move(hyperparams)), weights_(std::move(weights)) {
  if (hyper_.empty()) {
    throw std::invalid_argument("GPEnsemble: no members");
  }
  if (hyper_.size() != weights_.size()) {
    throw std::invalid_argument("GPEnsemble: weight/member count mismatch");
  }
  for (const auto& h : hyper_) {
    h.validate();
  }
}

GPEnsemble GPEnsemble::refit(const Dataset& d) const {
  if (d.empty()) {
    throw std::invalid_argument("GPEnsemble::refit: empty dataset");
  }
  GPEnsemble out(hyper_, weights_);
  out.members_.reserve(hyper_.size());
  for (std::size_t i = 0; i < hyper_.size(); ++i) {
    try {
      out.members_.push_back(fit_gp_escalating(hyper_[i], d));
    } catch (const FitError& e) {
      std::cerr << "warning: dropping ensemble member " << i << " (signal_variance="
                << hyper_[i].signal_variance << ", length_scale=" << hyper_[i].length_scale
                << "): " << e.what() << '\n';
      out.dropped_.push_back(i);
    }
  }
  if (out.members_.empty()) {
    throw FitError("GPEnsemble::refit: every member failed to fit");
  }
  if (!out.dropped_.empty()) {
    out.active_weights_ = weights_.without(out.dropped_);
  }
  return out;
}

std::vector<PosteriorGaussian> GPEnsemble::member_posteriors(double x) const {
  std::vector<PosteriorGaussian> out;
  out.reserve(members_.size());
  for (const auto& m : members_) {
    out.push_back(m.posterior(x));
  }
  return out;
}

namespace {

GaussianMeasure1D as_measure(const PosteriorGaussian& p) { return {p.mean, p.std}; }

}  // namespace

PosteriorGaussian GPEnsemble::barycenter_posterior(double x) const {
  if (!fitted()) {
    throw std::logic_error("GPEnsemble::barycenter_posterior: ensemble not fitted");
  }
  std::vector<GaussianMeasure1D> measures;
  measures.reserve(members_.size());
  for (const auto& m : members_) {
    measures.push_back(as_measure(m.posterior(x)));
  }
  const auto bar = barycenter_1d(measures, active_weights());
  return {bar.mean, bar.std};
}

std::vector<PosteriorGaussian> GPEnsemble::barycenter_posterior(std::span<const double> xs) const {
  if (!fitted()) {
    throw std::logic_error("GPEnsemble::barycenter_posterior: ensemble not fitted");
  }
  std::vector<std::vector<PosteriorGaussian>> per_member;
  per_member.reserve(members_.size());
  for (const auto& m : members_) {
    per_member.push_back(m.posterior(xs));
  }
  std::vector<PosteriorGaussian> out(xs.size());
  std::vector<GaussianMeasure1D> measures(members_.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    for (std::size_t i = 0; i < members_.size(); ++i) {
      measures[i] = as_measure(per_member[i][j]);
    }
    const auto bar = barycenter_1d(measures, active_weights());
    out[j] = {bar.mean, bar.std};
  }
  return out;
}

double GPEnsemble::lcb(double x, double xi) const {
  const auto p = barycenter_posterior(x);
  return p.mean - xi * p.std;
}

double GPEnsemble::ucb(double x, double xi) const {
  const auto p = barycenter_posterior(x);
  return p.mean + xi * p.std;
}

double GPEnsemble::mean_member_lcb(double x, double xi) const {
  const auto& w = active_weights();
  double total = 0.0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const auto p = members_[i].posterior(x);
    total += w[i] * (p.mean - xi * p.std);
  }
  return total;
}

double GPEnsemble::mean_member_ucb(double x, double xi) const {
  const auto& w = active_weights();
  double total = 0.0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const auto p = members_[i].posterior(x);
    total += w[i] * (p.mean + xi * p.std);
  }
  return total;
}

}  // namespace wbgp
