#pragma once

#include <cstdint>
#include <random>

namespace hc {

using Rng = std::mt19937_64;

// Stream channels used when deriving per-run generators from a master seed.
// Keeping the mapping fixed makes every artifact the CLI writes reproducible
// from (master seed, run index) alone.
inline constexpr std::uint64_t kChannelInit = 0;
inline constexpr std::uint64_t kChannelSystemK = 1;
inline constexpr std::uint64_t kChannelSystem1 = 2;
inline constexpr std::uint64_t kChannelNetwork = 3;
inline constexpr std::uint64_t kChannelOracle = 7;

/// Named-stream generator: seeds a fresh engine from (master, stream, channel).
inline Rng make_rng(std::uint64_t master_seed, std::uint64_t stream = 0,
                    std::uint64_t channel = 0) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
      static_cast<std::uint32_t>(stream),      static_cast<std::uint32_t>(stream >> 32),
      static_cast<std::uint32_t>(channel),     static_cast<std::uint32_t>(channel >> 32)};
  return Rng(seq);
}

/// Uniform double in [0, 1), 53 random bits.
inline double uniform_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Unbiased uniform index in [0, n), n >= 1. Lemire's bounded method.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  using u128 = unsigned __int128;
  const std::uint64_t range = n;
  std::uint64_t x = rng();
  u128 m = static_cast<u128>(x) * range;
  auto low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = -range % range;
    while (low < threshold) {
      x = rng();
      m = static_cast<u128>(x) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::size_t>(m >> 64);
}

}  // namespace hc
