#pragma once

#include <cstdint>
#include <random>

namespace pcomp {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed of replicate r under a master seed. Depends only on (master, r), so
// serial and parallel runs draw identical streams.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t replicate) {
  return splitmix64(master ^ splitmix64(replicate + 0x632BE59BD9B4E019ULL));
}

inline Rng make_stream(std::uint64_t master, std::uint64_t replicate) {
  return Rng(stream_seed(master, replicate));
}

// Uniform on the open interval (0, 1) with 53-bit resolution.
inline double uniform_open(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace pcomp
