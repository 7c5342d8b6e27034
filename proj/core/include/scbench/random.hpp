#pragma once

#include <cstdint>
#include <random>

namespace scbench {

/// Stream tags keep substreams of different pipeline stages disjoint.
enum class Stream : std::uint64_t {
  Efficiency = 1,
  Poisson = 2,
  TargetSampling = 3,
  SyntheticProfile = 4,
  SyntheticCounts = 5,
  Pca = 6,
  KMeans = 7,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent generator for (seed, stream, index). Drawing from the
/// substream of item i never depends on how many other items were drawn,
/// which is what makes parallel sampling reproducible.
inline std::mt19937_64 substream(std::uint64_t seed, Stream stream, std::uint64_t index) {
  const std::uint64_t key =
      mix64(mix64(mix64(seed) + static_cast<std::uint64_t>(stream)) + index);
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                    static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

}  // namespace scbench
