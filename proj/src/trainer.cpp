#include "vekua/trainer.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>

#include "vekua/csv.hpp"
#include "vekua/optim.hpp"

namespace vekua {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start)
        .count();
}

// One training problem behind a flat parameter vector: evaluate returns the
// loss and fills the flat gradient; finish evaluates the final loss and
// stores the trained parameters into the checkpoint.
struct Problem {
    std::vector<double> flat;
    std::function<double(const std::vector<double>&, std::vector<double>&)>
        evaluate;
    std::function<double(const std::vector<double>&, Checkpoint&)> finish;
};

Problem make_cascade_problem(const TrainConfig& cfg, const DenseMatrix& xn,
                             const std::vector<double>& y) {
    auto model = std::make_shared<ModelParams>(model_init(
        cfg.seed, xn.cols, cfg.blocks, cfg.freqs, cfg.hidden, cfg.lambda,
        /*use_warp=*/cfg.method == Method::kDeepVekua));
    model->learn_freqs = !cfg.freeze_freqs;

    Problem prob;
    prob.flat = pack_params(*model);
    prob.evaluate = [model, &xn, &y](const std::vector<double>& flat,
                                     std::vector<double>& grad) {
        unpack_params(flat, *model);
        auto [loss, grads] = loss_and_grad(*model, xn, y);
        grad = pack_grads(*model, grads);
        return loss;
    };
    prob.finish = [model, &xn, &y](const std::vector<double>& flat,
                                   Checkpoint& ckpt) {
        unpack_params(flat, *model);
        ForwardResult fwd = forward_train(*model, xn, y, /*keep_caches=*/false);
        ckpt.model = *model;
        ckpt.solved = fwd.solved;
        double loss = 0.0;
        for (double r : fwd.final_residual) loss += r * r;
        return loss / static_cast<double>(y.size());
    };
    return prob;
}

Problem make_siren_problem(const TrainConfig& cfg, const DenseMatrix& xn,
                           const std::vector<double>& y) {
    auto params = std::make_shared<SirenParams>(siren_init(cfg.seed, xn.cols));
    const double n = static_cast<double>(y.size());

    Problem prob;
    prob.flat = siren_pack(*params);
    prob.evaluate = [params, &xn, &y, n](const std::vector<double>& flat,
                                         std::vector<double>& grad) {
        siren_unpack(flat, *params);
        SirenCache cache;
        const std::vector<double> pred = siren_forward(*params, xn, &cache);
        std::vector<double> d_pred(pred.size());
        for (std::size_t i = 0; i < pred.size(); ++i)
            d_pred[i] = 2.0 * (pred[i] - y[i]) / n;
        grad = siren_pack(siren_vjp(*params, cache, d_pred));
        return mse(pred, y);
    };
    prob.finish = [params, &xn, &y](const std::vector<double>& flat,
                                    Checkpoint& ckpt) {
        siren_unpack(flat, *params);
        ckpt.siren = *params;
        return mse(siren_forward(*params, xn), y);
    };
    return prob;
}

Problem make_gridmlp_problem(const TrainConfig& cfg, const DenseMatrix& xn,
                             const std::vector<double>& y) {
    auto params =
        std::make_shared<GridMlpParams>(gridmlp_init(cfg.seed, xn.cols));
    const double n = static_cast<double>(y.size());

    Problem prob;
    prob.flat = gridmlp_pack(*params);
    prob.evaluate = [params, &xn, &y, n](const std::vector<double>& flat,
                                         std::vector<double>& grad) {
        gridmlp_unpack(flat, *params);
        GridMlpCache cache;
        const std::vector<double> pred = gridmlp_forward(*params, xn, &cache);
        std::vector<double> d_pred(pred.size());
        for (std::size_t i = 0; i < pred.size(); ++i)
            d_pred[i] = 2.0 * (pred[i] - y[i]) / n;
        grad = gridmlp_pack(gridmlp_vjp(*params, cache, d_pred));
        return mse(pred, y);
    };
    prob.finish = [params, &xn, &y](const std::vector<double>& flat,
                                    Checkpoint& ckpt) {
        gridmlp_unpack(flat, *params);
        ckpt.gridmlp = *params;
        return mse(gridmlp_forward(*params, xn), y);
    };
    return prob;
}

} // namespace

Checkpoint train(const TrainConfig& cfg, const SampleSet& data,
                 std::vector<MetricsRow>& metrics_out, bool verbose) {
    const auto start = Clock::now();

    Checkpoint ckpt;
    ckpt.config = cfg;
    ckpt.norm = fit_normalization(data.x);
    const DenseMatrix xn = ckpt.norm.apply(data.x);

    Problem prob;
    switch (cfg.method) {
        case Method::kDeepVekua:
        case Method::kCascade:
            prob = make_cascade_problem(cfg, xn, data.y);
            break;
        case Method::kSiren:
            prob = make_siren_problem(cfg, xn, data.y);
            break;
        case Method::kGridMlp:
            prob = make_gridmlp_problem(cfg, xn, data.y);
            break;
    }

    AdamState adam(prob.flat.size(), cfg.lr);
    const std::size_t report_every = std::max<std::size_t>(1, cfg.iters / 10);
    std::vector<double> grad;
    for (std::size_t it = 0; it < cfg.iters; ++it) {
        const double loss = prob.evaluate(prob.flat, grad);
        metrics_out.push_back({it, loss, 0.0});
        if (verbose && it % report_every == 0)
            std::printf("iter %zu  train_mse %.6e  elapsed %.0f ms\n", it,
                        loss, elapsed_ms(start));
        adam_step(adam, prob.flat, grad);
    }

    const double final_mse = prob.finish(prob.flat, ckpt);
    metrics_out.push_back({cfg.iters, final_mse, 0.0});
    if (verbose)
        std::printf("iter %zu  train_mse %.6e  elapsed %.0f ms (final)\n",
                    cfg.iters, final_mse, elapsed_ms(start));
    return ckpt;
}

std::string metrics_to_csv(const std::vector<MetricsRow>& rows) {
    std::ostringstream out;
    out << "iter,train_mse,wall_ms\n";
    for (const MetricsRow& r : rows)
        out << r.iter << "," << format_double(r.train_mse) << ","
            << format_double(r.wall_ms) << "\n";
    return out.str();
}

} // namespace vekua
