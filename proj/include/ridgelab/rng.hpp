#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>

namespace ridgelab {

// Counter-based generator: the SplitMix64 output function evaluated at
// (seed, counter).  Mixing constants are the ones from Steele, Lea & Flood
// (java.util.SplittableRandom).  Pure function of its arguments, so streams
// can be split and replayed from any index.
inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * kGoldenGamma;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Per-trial streams: master_seed XOR (stream_index * odd multiplier).
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) {
  return master ^ ((index + 1) * kGoldenGamma);
}

// Independent sub-streams within one trial (design, noise, ...).
inline std::uint64_t substream(std::uint64_t stream, std::uint64_t tag) {
  return stream ^ ((tag + 1) * 0xD1B54A32D192ED03ull);
}

/// Sequential view over one counter stream.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() { return splitmix64_at(seed_, counter_++); }

  /// Uniform on [0,1), 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0,1]; safe as a log() argument.
  double next_unit_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// +1 or -1 with equal probability.
  double next_sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

  /// Standard normal via Box-Muller; the paired draw is cached.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(next_unit_open()));
    const double a = 2.0 * std::numbers::pi * next_unit();
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ridgelab
