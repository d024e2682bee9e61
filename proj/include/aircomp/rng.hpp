#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace aircomp {

/// All randomness in the project flows through this wrapper around
/// std::mt19937_64, whose output sequence is fixed by the C++ standard, so a
/// given seed reproduces the same draw stream on every platform and build.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Rayleigh-distributed magnitude r with E[r^2] = 1, drawn by inverse-CDF
    /// so the result depends only on the engine's integer stream.
    double rayleigh_unit() {
        double u = uniform01();
        return std::sqrt(-std::log1p(-u));
    }

  private:
    std::mt19937_64 engine_;
};

/// Purpose tag for per-trial substreams.
enum class Stream : std::uint64_t {
    Topology = 1,
    Fading = 2,
};

/// Stateless finalizer from SplitMix64.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Derives an independent seed for (master_seed, trial_index, stream).
/// Trials never share generator state, so they can run in any order or in
/// parallel and still produce identical results.
constexpr std::uint64_t substream_seed(std::uint64_t master_seed,
                                       std::uint64_t trial_index,
                                       Stream stream) {
    std::uint64_t x = mix64(master_seed + 0x9E3779B97F4A7C15ull);
    x = mix64(x ^ (0xD1B54A32D192ED03ull * (trial_index + 1)));
    x = mix64(x ^ (0x8CB92BA72F3D8DD7ull * (static_cast<std::uint64_t>(stream) + 1)));
    return x;
}

}  // namespace aircomp
