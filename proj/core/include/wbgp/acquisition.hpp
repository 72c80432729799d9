#ifndef WBGP_ACQUISITION_HPP
#define WBGP_ACQUISITION_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "wbgp/gp.hpp"

namespace wbgp {

struct AcquisitionConfig {
  double xi = 2.0;               // exploration weight
  std::size_t grid_size = 1001;  // coarse scan of [0, 1]
  std::size_t refine_iters = 40; // golden-section steps around the best node

  void validate() const;
};

[[nodiscard]] inline double lcb(const PosteriorGaussian& p, double xi) noexcept { return p.mean - xi * p.std; }
[[nodiscard]] inline double ucb(const PosteriorGaussian& p, double xi) noexcept { return p.mean + xi * p.std; }

/// Evaluates a surrogate at a batch of points in [0, 1].
using PosteriorBatchFn = std::function<std::vector<PosteriorGaussian>(std::span<const double>)>;
/// Evaluates a scalar criterion at a batch of points in [0, 1].
using ScalarBatchFn = std::function<std::vector<double>(std::span<const double>)>;

struct Minimum {
  double x = 0.0;
  double value = 0.0;
};

/// Uniform scan of [0, 1] with `grid_size` nodes (ties go to the smallest x),
/// then golden-section search inside the bracket of neighbouring nodes. The
/// refined point replaces the grid winner only if it is strictly better.
[[nodiscard]] Minimum minimize_unit_interval(const ScalarBatchFn& f, std::size_t grid_size,
                                             std::size_t refine_iters);

/// argmin over [0, 1] of mean - xi * std.
[[nodiscard]] Minimum optimize_acquisition(const PosteriorBatchFn& surrogate, const AcquisitionConfig& cfg);

}  // namespace wbgp

#endif  // WBGP_ACQUISITION_HPP
