#pragma once

#include <cmath>
#include <cstdint>

namespace cachealloc {

// splitmix64 finalizer: bijective, full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based per-trial stream: the start state is a hash of (seed, trial),
// so every draw of trial t is a pure function of (seed, t). Any partition of
// trials across workers therefore reproduces the same outcomes bit for bit.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial)
      : state_(mix64(mix64(seed + 0x9E3779B97F4A7C15ull) ^
                     (trial * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull))) {
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
  }

  // uniform in [0, 1) with 53-bit resolution
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // unit-mean exponential
  double next_exp() { return -std::log1p(-next_unit()); }

  // uniform integer in [0, n), n >= 1 (fixed-point multiply; bias < n/2^64)
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace cachealloc
