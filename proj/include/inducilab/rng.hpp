#pragma once

#include <cstdint>

namespace inducilab {

/// Counter-based generator: every draw is a pure function of (seed, stream, counter), built from
/// the splitmix64 finalizer. Draws never depend on how many other draws happened before.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : key_(finalize(seed ^ finalize(stream + kGamma))) {}

  std::uint64_t bits(std::uint64_t counter) const { return finalize(key_ + (counter + 1) * kGamma); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const { return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by rejection (bound > 0).
  std::uint64_t below(std::uint64_t counter, std::uint64_t bound, std::uint64_t attempt_stride = 0x1000000) const {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (std::uint64_t a = 0;; ++a) {
      std::uint64_t x = bits(counter + a * attempt_stride);
      if (x < limit) return x % bound;
    }
  }

  CounterRng substream(std::uint64_t stream) const { return CounterRng(key_, stream); }

  static constexpr std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
};

/// Named substreams so unrelated consumers of one seed never share draws.
namespace streams {
inline constexpr std::uint64_t kConnectionSet = 1;
inline constexpr std::uint64_t kSignature = 2;
inline constexpr std::uint64_t kSuperSignature = 3;
inline constexpr std::uint64_t kBlowupSpec = 4;
inline constexpr std::uint64_t kSweep = 5;
inline constexpr std::uint64_t kProperty = 6;
}  // namespace streams

}  // namespace inducilab
