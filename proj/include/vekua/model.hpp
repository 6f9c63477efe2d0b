#pragma once

// ---------------------------------------------------------------------------
// The residual cascade.
//
// Each block warps the raw coordinates, embeds them in the complex plane,
// builds the radially-modulated Fourier basis Psi, and fits the current
// residual in closed form:
//     w = argmin ||Psi w - r||^2 + lambda ||w||^2
// The block's prediction Psi w is added to the running total and subtracted
// from the residual before the next block ("pass error to next layer").
//
// Training is bilevel: the inner weights w come from the exact solve; the
// outer parameters (warp weights, frequencies) receive gradients through the
// solution via the ridge VJP, chained across blocks because every later
// residual depends on every earlier prediction.
//
// Inference freezes the per-block weights from the final training solve;
// re-solving at query time is impossible without query targets.
// ---------------------------------------------------------------------------

#include <cstdint>
#include <vector>

#include "vekua/basis.hpp"
#include "vekua/linalg.hpp"
#include "vekua/warp.hpp"

namespace vekua {

struct BlockParams {
    WarpParams warp;
    FrequencySet freqs;
};

struct ModelParams {
    std::vector<BlockParams> blocks;
    double lambda = 1e-6;
    std::size_t d = 2;
    // Cascade variant: warp bypassed entirely (uv forced to zero).
    bool use_warp = true;
    // Which parameter groups the flattened vector exposes to the optimizer.
    // A frozen group keeps its init values and drops out of pack/unpack.
    bool learn_warp = true;
    bool learn_freqs = true;

    bool warp_in_flat() const { return use_warp && learn_warp; }
};

struct SolvedWeights {
    std::vector<std::vector<double>> w; // per block, length 4K
    std::vector<double> lambda_used;    // per block
};

struct BlockCache {
    WarpCache warp;
    ComplexBuffer zeta;
    BasisMatrix psi;
    RidgeSolution sol;
    std::vector<double> residual_in; // r entering this block's solve
};

struct ForwardResult {
    std::vector<double> total_pred;
    SolvedWeights solved;
    // residual_norms[0] = ||targets||, residual_norms[l] = ||r after block l||
    std::vector<double> residual_norms;
    std::vector<double> final_residual; // r after the last block
    std::vector<BlockCache> caches;
};

// Gradients of the training loss with respect to every block's parameters,
// in block order (same shapes as the parameters themselves).
using ModelGrads = std::vector<BlockParams>;

// Seeded model with per-block sub-streams, so two methods built from the
// same seed share identical frequencies regardless of warp usage.
ModelParams model_init(std::uint64_t seed, std::size_t d, std::size_t blocks,
                       std::size_t freqs_per_block, std::size_t hidden,
                       double lambda, bool use_warp, double sigma_f = 3.0);

ForwardResult forward_train(const ModelParams& m, const DenseMatrix& x,
                            const std::vector<double>& targets,
                            bool keep_caches = true);

// mse = (1/N) ||targets - total_pred||^2 together with the reverse sweep
// through every block, including the solve.
std::pair<double, ModelGrads> loss_and_grad(const ModelParams& m,
                                            const DenseMatrix& x,
                                            const std::vector<double>& targets);

// Sum of per-block basis responses against the frozen weights; no solve.
std::vector<double> predict(const ModelParams& m, const SolvedWeights& solved,
                            const DenseMatrix& x_query);

double mse(const std::vector<double>& pred, const std::vector<double>& truth);

// Canonical flattening: blocks in order; within a block w_in row-major, b,
// w_out row-major, freqs.re, freqs.im. Frozen groups (and the warp of a
// cascade model) are skipped. Gradient checking and the optimizer both rely
// on this order.
std::vector<double> pack_params(const ModelParams& m);
void unpack_params(const std::vector<double>& flat, ModelParams& m);
std::vector<double> pack_grads(const ModelParams& m, const ModelGrads& g);

} // namespace vekua
