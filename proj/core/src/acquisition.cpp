#include "wbgp/acquisition.hpp"

#include <array>
#include <stdexcept>

namespace wbgp {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;

double eval_one(const ScalarBatchFn& f, double x) {
  const std::array<double, 1> xs{x};
  return f(xs).at(0);
}

}  // namespace

void AcquisitionConfig::validate() const {
  if (!(xi > 0.0)) {
    throw std::invalid_argument("AcquisitionConfig: xi must be > 0");
  }
  if (grid_size < 2) {
    throw std::invalid_argument("AcquisitionConfig: grid_size must be >= 2");
  }
}

Minimum minimize_unit_interval(const ScalarBatchFn& f, std::size_t grid_size, std::size_t refine_iters) {
  if (grid_size < 2) {
    throw std::invalid_argument("minimize_unit_interval: grid_size must be >= 2");
  }
  const double h = 1.0 / static_cast<double>(grid_size - 1);
  std::vector<double> grid(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    grid[i] = static_cast<double>(i) * h;
  }
  grid.back() = 1.0;

  const std::vector<double> values = f(grid);
  if (values.size() != grid.size()) {
    throw std::logic_error("minimize_unit_interval: criterion returned wrong batch size");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid_size; ++i) {
    if (values[i] < values[best]) {
      best = i;
    }
  }
  Minimum result{grid[best], values[best]};
  if (refine_iters == 0) {
    return result;
  }

  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[best + 1 == grid_size ? best : best + 1];
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = eval_one(f, c);
  double fd = eval_one(f, d);
  for (std::size_t it = 1; it < refine_iters; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval_one(f, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval_one(f, d);
    }
  }
  const Minimum refined = fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
  if (refined.value < result.value) {
    result = refined;
  }
  return result;
}

Minimum optimize_acquisition(const PosteriorBatchFn& surrogate, const AcquisitionConfig& cfg) {
  cfg.validate();
  const double xi = cfg.xi;
  return minimize_unit_interval(
      [&](std::span<const double> xs) {
        const auto post = surrogate(xs);
        std::vector<double> out(post.size());
        for (std::size_t i = 0; i < post.size(); ++i) {
          out[i] = lcb(post[i], xi);
        }
        return out;
      },
      cfg.grid_size, cfg.refine_iters);
}

}  // namespace wbgp
