#pragma once

#include <cstdint>

namespace wpvol {

/// Counter-based stream: the i-th draw for sample s depends only on
/// (seed, s, i), so any partition of the sample range into shards sees the
/// same numbers. Mixing is splitmix64's finalizer.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t sample) noexcept
      : key_(mix(seed ^ 0x9e3779b97f4a7c15ULL) ^ mix(sample + 0x632be59bd9b4e019ULL)) {}

  std::uint64_t next_u64() noexcept { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform in the open interval (0, 1).
  double uniform() noexcept { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace wpvol
