#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace cpslab {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// Finalizer of SplitMix64 (Steele, Lea, Flood 2014). Bijective on uint64.
inline constexpr std::uint64_t splitmix_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Counter-based SplitMix64 stream. Draw i (0-based) is
/// splitmix_mix(seed + (i+1) * 0x9E3779B97F4A7C15), so the sequence is a
/// pure function of (seed, counter): identical seeds give identical draws
/// on every platform, and the number of draws consumed is observable.
/// Every sampling helper below consumes exactly one 64-bit draw.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return counter_; }

  std::uint64_t next_u64() {
    ++counter_;
    return detail::splitmix_mix(seed_ + counter_ * detail::kGolden);
  }

  /// Uniform on the open interval (0,1): (x_53 + 0.5) * 2^-53.
  /// Never returns 0 or 1, so -log of it is finite and positive.
  double next_unit() {
    const std::uint64_t x = next_u64() >> 11;
    return (static_cast<double>(x) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n) by the multiply-shift reduction
  /// (Lemire 2019), one draw per call. The O(n / 2^64) bias is the
  /// documented trade for a fixed draw count.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("next_below: n must be positive");
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(n);
    return static_cast<std::uint64_t>(wide >> 64);
  }

  /// Exponential(rate) via inversion; strictly positive.
  double next_exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("next_exponential: rate must be positive");
    return -std::log(next_unit()) / rate;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Seed for replica k of a master seed. splitmix_mix is a bijection and
/// k -> mix(seed) + (k+1)*kGolden is injective mod 2^64, so derived seeds
/// are pairwise distinct for any replica range.
inline std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t k) {
  return detail::splitmix_mix(detail::splitmix_mix(master_seed) + (k + 1) * detail::kGolden);
}

}  // namespace cpslab
