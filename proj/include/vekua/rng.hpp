#pragma once

// ---------------------------------------------------------------------------
// Deterministic random numbers: SplitMix64.
//
// The generator is counter-based: the i-th output (i >= 1) is
//     mix64(seed + i * 0x9E3779B97F4A7C15)
// where mix64 is the finalizer below. Every derived quantity (uniform,
// normal, sub-seed) is defined exactly in terms of the 64-bit stream, so any
// implementation in any language reproduces identical values from the same
// seed. See README for the full stream specification.
// ---------------------------------------------------------------------------

#include <cmath>
#include <cstdint>
#include <numbers>

namespace vekua {

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Independent sub-stream seed for a named purpose (data sampling, per-block
// parameter init, ...). Stream ids are small documented constants.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed ^ mix64(stream + 0x9E3779B97F4A7C15ull));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Standard normal via Box-Muller, cosine branch only (two uniforms per
    // draw). u1 lies in (0, 1] so the log is finite.
    double normal() {
        const double u1 =
            static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

// Stream ids used throughout the project. Kept in one place so the streams
// consumed by data generation never collide with parameter initialization.
namespace streams {
constexpr std::uint64_t kSampleCoords = 1;
constexpr std::uint64_t kSampleNoise = 2;
// Per-block streams: id + 2 * block_index.
constexpr std::uint64_t kWarpParams = 100;
constexpr std::uint64_t kFrequencies = 101;
// Baselines: id + layer_index where applicable.
constexpr std::uint64_t kSirenLayer = 200;
constexpr std::uint64_t kGridFeatures = 300;
constexpr std::uint64_t kGridHead = 301;
} // namespace streams

} // namespace vekua
