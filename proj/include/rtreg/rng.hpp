#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rtreg {

// splitmix64 (Steele, Lea & Flood): 64-bit state, one output per step, with
// the reference mixing constants, so seeds are portable across
// implementations of this interface.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on (0, 1]: 53-bit resolution, never zero, so log(uniform()) is finite.
  double uniform() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Standard normals via Box-Muller on the splitmix64 stream, caching the spare.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : u_(seed) {}

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(u_.uniform()));
    const double t = 2.0 * std::numbers::pi * u_.uniform();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  double uniform() { return u_.uniform(); }

 private:
  SplitMix64 u_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Deterministic stream splitting for pilot chains and parallel sweep cells.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  SplitMix64 g(seed ^ (0xD1B54A32D192ED03ull * (salt + 1)));
  return g.next();
}

}  // namespace rtreg
