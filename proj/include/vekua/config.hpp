#pragma once

// Training configuration: a flat key=value text file, one pair per line,
// '#' comments. Unknown keys are rejected.

#include <cstdint>
#include <string>

namespace vekua {

enum class Method { kDeepVekua, kSiren, kGridMlp, kCascade };

Method method_from_string(const std::string& name);
std::string method_to_string(Method m);

struct TrainConfig {
    std::string benchmark;
    Method method = Method::kDeepVekua;
    std::uint64_t seed = 0;
    std::size_t iters = 2000;
    double lr = 2e-3;
    double lambda = 1e-6;
    std::size_t blocks = 5;
    std::size_t freqs = 16;  // complex frequencies per block (4K basis columns)
    std::size_t hidden = 32; // warp hidden width
    std::size_t n_train = 0;      // 0: benchmark default (256 in 2D, 128 in 1D)
    double noise_sigma = -1.0;    // < 0: benchmark default
    std::string out = ".";
    bool freeze_freqs = false; // fixed-frequency cascade variant

    // Fills n_train / noise_sigma defaults from the benchmark and checks the
    // invariants (positive counts, lr > 0 unless iters == 0, lambda > 0).
    void resolve_and_validate();
};

TrainConfig parse_config_text(const std::string& text);
TrainConfig load_config(const std::string& path);
std::string config_to_text(const TrainConfig& cfg); // resolved, fixed key order

} // namespace vekua
