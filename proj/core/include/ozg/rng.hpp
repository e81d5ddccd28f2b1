#pragma once

#include <cstdint>
#include <random>

namespace ozg {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seed for an independent per-trial stream. Trial i always gets the same
// stream for a given master seed, so results do not depend on how trials are
// scheduled across worker threads.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 0x9E3779B97F4A7C15ull));
}

inline std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t stream) {
  return std::mt19937_64(stream_seed(master, stream));
}

// Unbiased draw from [0, bound), bound >= 1. Multiply-shift with rejection;
// avoids the implementation-defined behaviour of std::uniform_int_distribution.
inline std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t bound) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * bound;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (lo < threshold) {
      m = static_cast<unsigned __int128>(rng()) * bound;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace ozg
