#ifndef WBGP_SEEDING_HPP
#define WBGP_SEEDING_HPP

#include <cstdint>

namespace wbgp {

/// Independent random streams consumed by one run.
enum class SeedStream : std::uint64_t {
  kLhs = 1,
  kEnsemble = 2,
};

/// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed for run `run_index` of a campaign. All algorithms at the same run
/// index receive the same value, hence the same initial design.
[[nodiscard]] constexpr std::uint64_t run_seed(std::uint64_t master, std::uint64_t run_index) noexcept {
  return splitmix64(splitmix64(master) ^ (run_index * 0xD1B54A32D192ED03ULL));
}

[[nodiscard]] constexpr std::uint64_t stream_seed(std::uint64_t run, SeedStream stream) noexcept {
  return splitmix64(run ^ splitmix64(static_cast<std::uint64_t>(stream)));
}

}  // namespace wbgp

#endif  // WBGP_SEEDING_HPP
