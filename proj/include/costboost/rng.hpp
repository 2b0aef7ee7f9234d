// Reproducible randomness: mt19937_64 with purpose-tagged substreams, and
// explicit bit-to-double mappings. Standard-library distributions are
// implementation-defined, so uniforms and normals are generated from raw
// engine output to keep datasets byte-identical across platforms.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace costboost {

// Substream purposes; combined with the user seed so different uses of one
// seed never overlap.
enum class RngPurpose : std::uint64_t {
  points = 0x706f696e7473ull,    // synthetic point draws
  cv_shuffle = 0x63767368ull,    // cross-validation fold shuffles
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::mt19937_64 substream(std::uint64_t seed, RngPurpose purpose) {
  return std::mt19937_64(splitmix64(seed ^ static_cast<std::uint64_t>(purpose)));
}

// Uniform in [0, 1) from the top 53 bits of one engine draw.
inline double next_unit(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * (1.0 / 9007199254740992.0);
}

// Standard normal via Box-Muller (polar-free form; the log argument is kept
// away from zero by flipping the unit interval).
inline double next_normal(std::mt19937_64& eng) {
  const double u1 = 1.0 - next_unit(eng);  // (0, 1]
  const double u2 = next_unit(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace costboost
