#include "vekua/model.hpp"

#include <cmath>

#include "vekua/rng.hpp"

namespace vekua {

namespace {

DenseMatrix zero_uv(std::size_t n) { return DenseMatrix(n, 2); }

} // namespace

ModelParams model_init(std::uint64_t seed, std::size_t d, std::size_t blocks,
                       std::size_t freqs_per_block, std::size_t hidden,
                       double lambda, bool use_warp, double sigma_f) {
    if (blocks < 1)
        throw std::invalid_argument("model_init: need at least one block");
    if (!(lambda > 0.0))
        throw std::invalid_argument("model_init: lambda must be > 0");

    ModelParams m;
    m.d = d;
    m.lambda = lambda;
    m.use_warp = use_warp;
    m.blocks.resize(blocks);
    for (std::size_t l = 0; l < blocks; ++l) {
        m.blocks[l].warp = warp_init(
            derive_seed(seed, streams::kWarpParams + 2 * l), d, hidden);
        m.blocks[l].freqs = freqs_init(
            derive_seed(seed, streams::kFrequencies + 2 * l), freqs_per_block,
            sigma_f);
    }
    return m;
}

ForwardResult forward_train(const ModelParams& m, const DenseMatrix& x,
                            const std::vector<double>& targets,
                            bool keep_caches) {
    const std::size_t n = x.rows;
    if (n == 0) throw DimensionMismatch("forward_train: empty input");
    if (x.cols != m.d)
        throw DimensionMismatch("forward_train: x cols != model d");
    if (targets.size() != n)
        throw DimensionMismatch("forward_train: targets length != rows");
    if (!all_finite(targets))
        throw std::invalid_argument("forward_train: non-finite target");

    ForwardResult out;
    out.total_pred.assign(n, 0.0);
    out.residual_norms.reserve(m.blocks.size() + 1);
    out.residual_norms.push_back(norm2(targets));
    if (keep_caches) out.caches.resize(m.blocks.size());

    std::vector<double> residual = targets;
    for (std::size_t l = 0; l < m.blocks.size(); ++l) {
        const BlockParams& blk = m.blocks[l];
        BlockCache local;
        BlockCache& cache = keep_caches ? out.caches[l] : local;

        DenseMatrix uv = m.use_warp
                             ? warp_forward(blk.warp, x,
                                            keep_caches ? &cache.warp : nullptr)
                             : zero_uv(n);
        cache.zeta = embed_complex(x, uv);
        cache.psi = vekua_basis(cache.zeta, blk.freqs);
        cache.residual_in = residual;
        cache.sol = ridge_solve(cache.psi, residual, m.lambda);

        const std::vector<double> pred = matvec(cache.psi, cache.sol.weights);
        for (std::size_t i = 0; i < n; ++i) {
            out.total_pred[i] += pred[i];
            residual[i] -= pred[i];
        }
        out.residual_norms.push_back(norm2(residual));
        out.solved.w.push_back(cache.sol.weights);
        out.solved.lambda_used.push_back(cache.sol.lambda_used);
    }
    out.final_residual = std::move(residual);
    return out;
}

std::pair<double, ModelGrads> loss_and_grad(const ModelParams& m,
                                            const DenseMatrix& x,
                                            const std::vector<double>& targets) {
    const std::size_t n = x.rows;
    const std::size_t num_blocks = m.blocks.size();
    ForwardResult fwd = forward_train(m, x, targets, /*keep_caches=*/true);

    double loss = 0.0;
    for (double r : fwd.final_residual) loss += r * r;
    loss /= static_cast<double>(n);

    ModelGrads grads(num_blocks);

    // gbar = d loss / d r^(l), swept from the last block back to the first.
    std::vector<double> gbar(n);
    for (std::size_t i = 0; i < n; ++i)
        gbar[i] = 2.0 * fwd.final_residual[i] / static_cast<double>(n);

    for (std::size_t l = num_blocks; l-- > 0;) {
        const BlockCache& cache = fwd.caches[l];
        const BlockParams& blk = m.blocks[l];
        const std::size_t cols = cache.psi.cols;

        // Upstream into this block's prediction p = Psi w is -gbar.
        // Split into the direct Psi path and the solved-weights path.
        std::vector<double> g_w = matvec_t(cache.psi, gbar);
        for (double& v : g_w) v = -v;

        DenseMatrix d_psi(cache.psi.rows, cols);
        for (std::size_t i = 0; i < n; ++i) {
            const double gi = -gbar[i];
            double* row = d_psi.data.data() + i * cols;
            const double* w = cache.sol.weights.data();
            for (std::size_t j = 0; j < cols; ++j) row[j] = gi * w[j];
        }

        RidgeVjp rvjp =
            ridge_solve_vjp(cache.psi, cache.residual_in, cache.sol.lambda_used,
                            cache.sol.weights, g_w, &cache.sol.chol);
        for (std::size_t i = 0; i < d_psi.data.size(); ++i)
            d_psi.data[i] += rvjp.d_psi.data[i];

        BasisVjp bvjp = vekua_basis_vjp(cache.zeta, blk.freqs, d_psi);
        grads[l].freqs = bvjp.d_freqs;
        if (m.use_warp) {
            // d zeta / d uv is the identity for both embeddings.
            grads[l].warp = warp_vjp(blk.warp, cache.warp, bvjp.d_zeta);
        } else {
            grads[l].warp.w_in = DenseMatrix(m.d, blk.warp.hidden());
            grads[l].warp.b.assign(blk.warp.hidden(), 0.0);
            grads[l].warp.w_out = DenseMatrix(blk.warp.hidden(), 2);
        }

        // r^(l) = r^(l-1) - Psi w feeds both the next block and the solve.
        for (std::size_t i = 0; i < n; ++i) gbar[i] += rvjp.d_r[i];
    }
    return {loss, std::move(grads)};
}

std::vector<double> predict(const ModelParams& m, const SolvedWeights& solved,
                            const DenseMatrix& x_query) {
    if (x_query.cols != m.d)
        throw DimensionMismatch("predict: query cols != model d");
    if (solved.w.size() != m.blocks.size())
        throw DimensionMismatch("predict: solved weights != block count");

    const std::size_t n = x_query.rows;
    std::vector<double> pred(n, 0.0);
    for (std::size_t l = 0; l < m.blocks.size(); ++l) {
        const BlockParams& blk = m.blocks[l];
        if (solved.w[l].size() != 4 * blk.freqs.size())
            throw DimensionMismatch("predict: weight length != 4K");
        DenseMatrix uv =
            m.use_warp ? warp_forward(blk.warp, x_query) : zero_uv(n);
        const ComplexBuffer zeta = embed_complex(x_query, uv);
        const BasisMatrix psi = vekua_basis(zeta, blk.freqs);
        const std::vector<double> block_pred = matvec(psi, solved.w[l]);
        for (std::size_t i = 0; i < n; ++i) pred[i] += block_pred[i];
    }
    return pred;
}

double mse(const std::vector<double>& pred, const std::vector<double>& truth) {
    if (pred.size() != truth.size())
        throw DimensionMismatch("mse: lengths differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double e = truth[i] - pred[i];
        acc += e * e;
    }
    return acc / static_cast<double>(pred.size());
}

std::vector<double> pack_params(const ModelParams& m) {
    std::vector<double> flat;
    for (const BlockParams& blk : m.blocks) {
        if (m.warp_in_flat()) {
            flat.insert(flat.end(), blk.warp.w_in.data.begin(),
                        blk.warp.w_in.data.end());
            flat.insert(flat.end(), blk.warp.b.begin(), blk.warp.b.end());
            flat.insert(flat.end(), blk.warp.w_out.data.begin(),
                        blk.warp.w_out.data.end());
        }
        if (m.learn_freqs) {
            flat.insert(flat.end(), blk.freqs.re.begin(), blk.freqs.re.end());
            flat.insert(flat.end(), blk.freqs.im.begin(), blk.freqs.im.end());
        }
    }
    return flat;
}

void unpack_params(const std::vector<double>& flat, ModelParams& m) {
    std::size_t pos = 0;
    auto take = [&](double* dst, std::size_t count) {
        if (pos + count > flat.size())
            throw DimensionMismatch("unpack_params: flat vector too short");
        for (std::size_t i = 0; i < count; ++i) dst[i] = flat[pos++];
    };
    for (BlockParams& blk : m.blocks) {
        if (m.warp_in_flat()) {
            take(blk.warp.w_in.data.data(), blk.warp.w_in.data.size());
            take(blk.warp.b.data(), blk.warp.b.size());
            take(blk.warp.w_out.data.data(), blk.warp.w_out.data.size());
        }
        if (m.learn_freqs) {
            take(blk.freqs.re.data(), blk.freqs.re.size());
            take(blk.freqs.im.data(), blk.freqs.im.size());
        }
    }
    if (pos != flat.size())
        throw DimensionMismatch("unpack_params: flat vector too long");
}

std::vector<double> pack_grads(const ModelParams& m, const ModelGrads& g) {
    if (g.size() != m.blocks.size())
        throw DimensionMismatch("pack_grads: block count mismatch");
    std::vector<double> flat;
    for (std::size_t l = 0; l < g.size(); ++l) {
        const BlockParams& blk = g[l];
        if (m.warp_in_flat()) {
            flat.insert(flat.end(), blk.warp.w_in.data.begin(),
                        blk.warp.w_in.data.end());
            flat.insert(flat.end(), blk.warp.b.begin(), blk.warp.b.end());
            flat.insert(flat.end(), blk.warp.w_out.data.begin(),
                        blk.warp.w_out.data.end());
        }
        if (m.learn_freqs) {
            flat.insert(flat.end(), blk.freqs.re.begin(), blk.freqs.re.end());
            flat.insert(flat.end(), blk.freqs.im.begin(), blk.freqs.im.end());
        }
    }
    return flat;
}

} // namespace vekua
