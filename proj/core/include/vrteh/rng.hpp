#pragma once

#include <cstdint>
#include <random>

namespace vrteh {

// Deterministic random stream with derivable sub-streams.
//
// The generator is std::mt19937_64 seeded with a single 64-bit value; both
// the engine and its seeding procedure are fully specified by the C++
// standard, so a given seed produces the same sequence on every conforming
// platform. Sub-stream k of a stream with seed s is a fresh stream seeded
// with the k-th output of the SplitMix64 sequence started at s, which keeps
// sub-streams cheap to derive and statistically independent of each other
// and of the parent.
//
// Uniform doubles are built from the top 53 bits of one engine output as
// (bits + 0.5) * 2^-53, which lies strictly inside (0, 1). Normal deviates
// apply the inverse standard normal CDF (see gaussian.hpp) to one uniform
// draw, so every distribution here inherits the engine's reproducibility.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Independent stream derived from this stream's seed and an index.
  RandomStream substream(std::uint64_t index) const {
    return RandomStream(substream_seed(seed_, index));
  }

  // SplitMix64 output number `index` for the state `seed`.
  static std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

  // Next raw 64-bit engine word.
  std::uint64_t next() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double uniform01() {
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // Uniform on (a, b).
  double uniform(double a, double b) { return a + uniform01() * (b - a); }

  // Standard normal deviate via the inverse-CDF transform.
  double normal();

  // Unbiased integer in [0, n) by rejection from the top of the 64-bit
  // range. Throws domain_error when n is zero.
  std::uint64_t bounded(std::uint64_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace vrteh
