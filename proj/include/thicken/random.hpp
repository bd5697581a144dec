#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace thicken {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream for (seed, index); used so each trial of a campaign is
// reproducible no matter which worker runs it.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x5851f42d4c957f2dULL)));
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline double standard_normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

// Uniform point of the probability simplex (normalized i.i.d. exponentials).
inline std::vector<double> dirichlet_weights(std::size_t count, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(count);
  double total = 0.0;
  for (double& x : w) {
    do {
      x = expo(rng);
    } while (x <= 0.0);
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

}  // namespace thicken
