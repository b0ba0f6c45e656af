#pragma once

#include <cstdint>
#include <random>

#include "rwidth/types.hpp"

namespace rwidth {

// Counter-style seed scrambler; decorrelates nearby seeds before they
// reach the engine, so sub-streams may be derived by plain XOR strides.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Sub-stream ids for trial seed splitting.
inline constexpr std::uint64_t kStreamMatrix = 1;
inline constexpr std::uint64_t kStreamSignal = 2;
inline constexpr std::uint64_t kStreamNoise = 3;
inline constexpr std::uint64_t kStreamHeuristic = 4;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  double normal() { return normal_(engine_); }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  Index uniform_index(Index n) {
    return std::uniform_int_distribution<Index>(0, n - 1)(engine_);
  }

  bool coin() { return (engine_() & 1u) != 0; }

  Vector gaussian_vector(Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  Vector unit_vector(Index n) {
    Vector v = gaussian_vector(n);
    double nrm = v.norm();
    while (nrm == 0.0) {
      v = gaussian_vector(n);
      nrm = v.norm();
    }
    return v / nrm;
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace rwidth
