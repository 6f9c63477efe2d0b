#pragma once

// Per-block neural deformation field: a single-hidden-layer sinusoidal
// perceptron producing the 2-vector warp
//     h  = sin(x W_in + b)
//     uv = h W_out
// W_out is zero-initialized, so a freshly built cascade starts as a static
// basis and learns the warp as a correction.

#include <cstdint>
#include <vector>

#include "vekua/dense.hpp"

namespace vekua {

struct WarpParams {
    DenseMatrix w_in;      // d x H
    std::vector<double> b; // H
    DenseMatrix w_out;     // H x 2

    std::size_t in_dim() const { return w_in.rows; }
    std::size_t hidden() const { return w_in.cols; }
};

struct WarpCache {
    DenseMatrix x;      // N x d
    DenseMatrix h;      // N x H, sin of pre-activation
    DenseMatrix cos_z;  // N x H, cos of pre-activation
};

// w_in ~ U(-omega0/d, omega0/d) with omega0 = 6 (the warp must stay smooth,
// well below SIREN's 30), b ~ U(-pi, pi), w_out = 0.
WarpParams warp_init(std::uint64_t seed, std::size_t d, std::size_t hidden);

// Returns uv (N x 2). If cache is non-null it is filled for the backward
// pass.
DenseMatrix warp_forward(const WarpParams& p, const DenseMatrix& x,
                         WarpCache* cache = nullptr);

// Exact chain rule through the forward pass. No gradient with respect to x
// is produced: every block warps the raw input coordinates, which are data.
WarpParams warp_vjp(const WarpParams& p, const WarpCache& cache,
                    const DenseMatrix& d_uv);

} // namespace vekua
