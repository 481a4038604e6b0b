#include "vrteh/rng.hpp"

#include "vrteh/errors.hpp"
#include "vrteh/gaussian.hpp"

namespace vrteh {

std::uint64_t RandomStream::substream_seed(std::uint64_t seed,
                                           std::uint64_t index) {
  // SplitMix64: state after `index + 1` increments, then the finalizer.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double RandomStream::normal() { return normal_quantile(uniform01()); }

std::uint64_t RandomStream::bounded(std::uint64_t n) {
  if (n == 0) {
    throw domain_error("RandomStream::bounded: n must be positive");
  }
  // Accept only words above 2^64 mod n; each residue then occurs equally
  // often among accepted words.
  const std::uint64_t limit = (0 - n) % n;
  std::uint64_t x = engine_();
  while (x < limit) {
    x = engine_();
  }
  return x % n;
}

}  // namespace vrteh
