#pragma once

#include <cstdint>
#include <random>

namespace mhq {

/// Seeded generator with a portable uniform draw. std::mt19937_64's output
/// sequence is fixed by the standard; the double conversion below is too.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

/// Independent seed for substream `index` of `seed` (splitmix64 finalizer).
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace mhq
