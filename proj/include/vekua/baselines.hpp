#pragma once

// Gradient-trained baselines: a sinusoidal MLP and a bilinear feature grid
// with a small perceptron head. Both are full-batch MSE models over the same
// normalized coordinates as the cascade.

#include <cstdint>
#include <vector>

#include "vekua/dense.hpp"

namespace vekua {

// ---------------------------------------------------------------------------
// SIREN: 4 hidden layers x 64 units, sin(omega0 * (x W + b)) activations,
// omega0 = 30, linear head. Init follows the usual sinusoidal-network
// scheme: first layer U(-1/d, 1/d), later layers U(-sqrt(6/fan_in)/omega0,
// +sqrt(6/fan_in)/omega0), biases U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
// ---------------------------------------------------------------------------

struct SirenParams {
    std::vector<DenseMatrix> w;          // layer weights, in x out
    std::vector<std::vector<double>> b;  // layer biases
    double omega0 = 30.0;
};

struct SirenCache {
    std::vector<DenseMatrix> activations; // a[0] = x, a[l+1] = sin(omega0 z)
    std::vector<DenseMatrix> cos_z;       // cos(omega0 z) per sine layer
};

SirenParams siren_init(std::uint64_t seed, std::size_t d,
                       std::size_t hidden = 64, std::size_t hidden_layers = 4);

std::vector<double> siren_forward(const SirenParams& p, const DenseMatrix& x,
                                  SirenCache* cache = nullptr);

SirenParams siren_vjp(const SirenParams& p, const SirenCache& cache,
                      const std::vector<double>& d_pred);

std::vector<double> siren_pack(const SirenParams& p);
void siren_unpack(const std::vector<double>& flat, SirenParams& p);

// ---------------------------------------------------------------------------
// GridMLP: G x G learnable feature grid (G = 32, feature dim 8) over
// [-1, 1]^d, bilinear interpolation (linear in 1D), then a two-layer head
// of width 32 with tanh. Grid features start near zero; the head uses a
// Xavier-style uniform init.
// ---------------------------------------------------------------------------

struct GridMlpParams {
    std::size_t d = 2;
    std::size_t res = 32;     // nodes per axis
    std::size_t feat = 8;     // features per node
    std::vector<double> grid; // res^d x feat, node-major
    DenseMatrix w1;           // feat x width
    std::vector<double> b1;   // width
    DenseMatrix w2;           // width x 1
    double b2 = 0.0;
};

struct GridMlpCache {
    // Per sample: the corner node indices and interpolation weights, the
    // interpolated feature vector, and the hidden activation.
    std::vector<std::size_t> corners; // N * 2^d
    std::vector<double> weights;      // N * 2^d
    DenseMatrix features;             // N x feat
    DenseMatrix hidden;               // N x width (tanh already applied)
};

GridMlpParams gridmlp_init(std::uint64_t seed, std::size_t d,
                           std::size_t res = 32, std::size_t feat = 8,
                           std::size_t width = 32);

// Interpolated feature vector at one point; identity at grid nodes.
std::vector<double> gridmlp_features(const GridMlpParams& p,
                                     const double* coord);

std::vector<double> gridmlp_forward(const GridMlpParams& p,
                                    const DenseMatrix& x,
                                    GridMlpCache* cache = nullptr);

GridMlpParams gridmlp_vjp(const GridMlpParams& p, const GridMlpCache& cache,
                          const std::vector<double>& d_pred);

std::vector<double> gridmlp_pack(const GridMlpParams& p);
void gridmlp_unpack(const std::vector<double>& flat, GridMlpParams& p);

} // namespace vekua
