#pragma once

#include <cmath>
#include <cstdint>

#include "ubiloc/geometry.hpp"

namespace ubiloc {

// Keyed counter RNG built on the splitmix64 finalizer. A draw depends only on
// (seed, domain, key_a, key_b) and its index within the substream, so
// substreams can be generated in any order, including in parallel, with
// identical results.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t domain, std::uint64_t key_a = 0,
             std::uint64_t key_b = 0) {
    state_ = mix(seed + 0x9E3779B97F4A7C15ull);
    state_ = mix(state_ ^ (domain + 0xD1B54A32D192ED03ull));
    state_ = mix(state_ ^ (key_a + 0x8CB92BA72F3D8DD7ull));
    state_ = mix(state_ ^ (key_b + 0xAEF17502108EF2D9ull));
  }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Zero-mean Gaussian via Box-Muller. Two uniforms per draw, no caching.
  double gaussian(double sigma) {
    double u1 = uniform01();
    const double u2 = uniform01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  std::uint64_t state_ = 0;
};

// Substream domains. These define the reproducible output stream; keep stable.
enum RngDomain : std::uint64_t {
  kRngMeasurement = 1,
  kRngSensorGps = 2,
  kRngSensorLight = 3,
  kRngSensorMag = 4,
  kRngSensorAccel = 5,
};

}  // namespace ubiloc
