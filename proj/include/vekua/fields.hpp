#pragma once

// Synthetic analytic benchmarks with closed-form ground truth, sparse
// training samples, and a dense noise-free evaluation grid.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vekua/dense.hpp"

namespace vekua {

struct SampleSet {
    DenseMatrix x;         // N x d, coordinates in [-1, 1]^d
    std::vector<double> y; // N targets
    std::string benchmark;
    std::uint64_t seed = 0;
    double noise_sigma = 0.0;

    std::size_t size() const { return x.rows; }
    std::size_t dim() const { return x.cols; }
};

struct EvalGrid {
    std::size_t resolution = 0; // nodes per axis
    DenseMatrix x;              // R^d x d dense coordinates
    std::vector<double> y_true; // noise-free truth
};

struct Benchmark {
    std::string name;
    std::size_t dim;
    std::size_t default_n_train;
    double default_noise_sigma;
};

// warped_harmonic, advected_gaussian, sdf_square, seismic_packets (2D) and
// chirp1d (1D).
const std::vector<Benchmark>& benchmark_list();
const Benchmark& benchmark_info(const std::string& name);

// Closed-form target value at a point.
double benchmark_truth(const std::string& name, const double* coord);

// Samples n_train coordinates uniformly from [-1, 1]^d, evaluates the closed
// form, adds noise_sigma * standard normal to the targets, and tabulates the
// noise-free truth on a dense grid (64 per axis in 2D, 512 in 1D).
std::pair<SampleSet, EvalGrid> generate(const std::string& benchmark,
                                        std::uint64_t seed,
                                        std::size_t n_train,
                                        double noise_sigma);

double mse_on_grid(
    const std::function<std::vector<double>(const DenseMatrix&)>& predict_fn,
    const EvalGrid& grid);

} // namespace vekua
