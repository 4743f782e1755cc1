#pragma once

#include <cstdint>
#include <random>

namespace hff {

using Rng = std::mt19937_64;

// Roles separate independent random streams drawn from one master seed.
enum class StreamRole : std::uint64_t {
  couplings = 1,
  states = 2,
  shots = 3,
  split = 4,
  function = 5,
  experiment = 6,
};

/// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/**
 * @brief Counter-based substream seed.
 *
 * The result depends only on the tuple (master, role, sample, index, circuit),
 * so work items can be processed in any order or on any thread and still draw
 * the same random numbers.
 */
constexpr std::uint64_t substream_seed(std::uint64_t master, StreamRole role,
                                       std::uint64_t sample = 0, std::uint64_t index = 0,
                                       std::uint64_t circuit = 0) noexcept {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ static_cast<std::uint64_t>(role));
  h = mix64(h ^ sample);
  h = mix64(h ^ index);
  h = mix64(h ^ circuit);
  return h;
}

inline Rng make_substream(std::uint64_t master, StreamRole role, std::uint64_t sample = 0,
                          std::uint64_t index = 0, std::uint64_t circuit = 0) {
  return Rng(substream_seed(master, role, sample, index, circuit));
}

}  // namespace hff
