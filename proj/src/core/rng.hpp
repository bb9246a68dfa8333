#pragma once

#include <cmath>
#include <cstdint>

namespace qhet::rng {

// Counter-based generator built on the splitmix64 avalanche: every output is
// a pure hash of (seed, stream, counter), so any substream can be produced
// independently, in any order, on any thread. Fixed for the test vectors.

inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline uint64_t derive_stream(uint64_t seed, uint64_t stream) {
  return mix64(mix64(seed) ^ (0x9e3779b97f4a7c15ull * (stream + 1)));
}

class CounterRng {
 public:
  explicit CounterRng(uint64_t seed, uint64_t stream = 0)
      : base_(derive_stream(seed, stream)) {}

  uint64_t next_u64() { return mix64(base_ + counter_++); }

  // Uniform in (0, 1); never exactly 0 so log() is safe.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

  // Box-Muller pair of independent standard normals.
  void normal_pair(double& z0, double& z1) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double m = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    z0 = m * std::cos(a);
    z1 = m * std::sin(a);
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double z0, z1;
    normal_pair(z0, z1);
    spare_ = z1;
    has_spare_ = true;
    return z0;
  }

 private:
  uint64_t base_;
  uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qhet::rng
