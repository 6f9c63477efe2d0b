#include <doctest.h>

#include <cmath>
#include <limits>

#include "test_util.hpp"
#include "vekua/fields.hpp"
#include "vekua/model.hpp"
#include "vekua/optim.hpp"
#include "vekua/trainer.hpp"

using namespace vekua;

namespace {

// Small, well-conditioned instances: lambda large enough that the solve
// stays smooth under finite-difference probing.
ModelParams small_model(std::uint64_t seed, std::size_t blocks,
                        std::size_t freqs = 4, std::size_t hidden = 4,
                        double lambda = 1e-2, bool use_warp = true) {
    ModelParams m = model_init(seed, 2, blocks, freqs, hidden, lambda, use_warp);
    // Give the warp a nonzero output head so every parameter matters.
    if (use_warp) {
        Rng rng(derive_seed(seed, 999));
        for (BlockParams& blk : m.blocks)
            for (double& v : blk.warp.w_out.data) v = rng.uniform(-0.3, 0.3);
    }
    return m;
}

double fd_worst_error(const ModelParams& m, const DenseMatrix& x,
                      const std::vector<double>& y) {
    ModelParams probe_model = m;
    auto [loss, grads] = loss_and_grad(probe_model, x, y);
    (void)loss;
    const std::vector<double> flat = pack_params(probe_model);
    const std::vector<double> analytic = pack_grads(probe_model, grads);
    auto probe = [&](const std::vector<double>& p) {
        ModelParams q = m;
        unpack_params(p, q);
        return loss_and_grad(q, x, y).first;
    };
    return test::max_grad_rel_error(probe, flat, analytic);
}

} // namespace

TEST_CASE("forward_train: zero targets give zero everything") {
    Rng rng(601);
    const ModelParams m = small_model(17, 2);
    const DenseMatrix x = test::random_matrix(rng, 20, 2);
    const ForwardResult fwd = forward_train(m, x, std::vector<double>(20, 0.0));
    for (double v : fwd.total_pred) CHECK(v == 0.0);
    for (double n : fwd.residual_norms) CHECK(n == 0.0);
    for (const auto& w : fwd.solved.w)
        for (double v : w) CHECK(v == 0.0);
}

TEST_CASE("forward_train: target in span(Psi) is recovered exactly") {
    Rng rng(602);
    ModelParams m = model_init(23, 2, 1, 4, 4, 1e-12, true);
    const DenseMatrix x = test::random_matrix(rng, 60, 2);
    // Zero-init warp: the block's basis is just vekua_basis(x).
    const BasisMatrix psi =
        vekua_basis(embed_complex(x, DenseMatrix(60, 2)), m.blocks[0].freqs);
    std::vector<double> targets(60);
    for (std::size_t i = 0; i < 60; ++i) targets[i] = psi(i, 5);
    const ForwardResult fwd = forward_train(m, x, targets);
    const double train_mse =
        mse(fwd.total_pred, targets);
    CHECK(train_mse <= 1e-10);
}

TEST_CASE("forward_train: residual norms never increase") {
    Rng rng(603);
    for (int trial = 0; trial < 5; ++trial) {
        const ModelParams m = small_model(700 + trial, 5);
        const DenseMatrix x = test::random_matrix(rng, 40, 2);
        const std::vector<double> y = test::random_vector(rng, 40, -2.0, 2.0);
        const ForwardResult fwd = forward_train(m, x, y);
        REQUIRE(fwd.residual_norms.size() == 6);
        for (std::size_t l = 0; l + 1 < fwd.residual_norms.size(); ++l)
            CHECK(fwd.residual_norms[l + 1] <=
                  fwd.residual_norms[l] * (1.0 + 1e-12));
    }
}

TEST_CASE("predict on training points reproduces forward_train bitwise") {
    Rng rng(604);
    const ModelParams m = small_model(29, 3);
    const DenseMatrix x = test::random_matrix(rng, 25, 2);
    const std::vector<double> y = test::random_vector(rng, 25);
    const ForwardResult fwd = forward_train(m, x, y);
    const std::vector<double> pred = predict(m, fwd.solved, x);
    CHECK(pred == fwd.total_pred);
}

TEST_CASE("predict: zero solved weights give zero predictions") {
    const ModelParams m = small_model(31, 2);
    SolvedWeights solved;
    solved.w.assign(2, std::vector<double>(16, 0.0));
    solved.lambda_used.assign(2, 1e-2);
    DenseMatrix q(3, 2);
    q(0, 0) = 0.1;
    q(1, 1) = -0.4;
    q(2, 0) = 0.9;
    for (double v : predict(m, solved, q)) CHECK(v == 0.0);
}

TEST_CASE("predict: continuous in the query point") {
    Rng rng(605);
    const ModelParams m = small_model(37, 2);
    const DenseMatrix x = test::random_matrix(rng, 30, 2);
    std::vector<double> y(30);
    for (std::size_t i = 0; i < 30; ++i)
        y[i] = std::sin(2.0 * x(i, 0)) + 0.5 * x(i, 1);
    const ForwardResult fwd = forward_train(m, x, y);

    DenseMatrix q(1, 2);
    q(0, 0) = 0.21;
    q(0, 1) = -0.37;
    const double base = predict(m, fwd.solved, q)[0];
    CHECK(std::isfinite(base));
    double prev_diff = std::numeric_limits<double>::infinity();
    for (double delta : {1e-2, 1e-4, 1e-6}) {
        DenseMatrix qd = q;
        qd(0, 0) += delta;
        const double diff = std::abs(predict(m, fwd.solved, qd)[0] - base);
        CHECK(diff <= prev_diff * 1.01 + 1e-12);
        prev_diff = diff;
    }
    CHECK(prev_diff <= 1e-3);
}

TEST_CASE("loss_and_grad: representable target is a stationary point") {
    Rng rng(606);
    ModelParams m = model_init(41, 2, 1, 4, 4, 1e-12, true);
    const DenseMatrix x = test::random_matrix(rng, 60, 2);
    const BasisMatrix psi =
        vekua_basis(embed_complex(x, DenseMatrix(60, 2)), m.blocks[0].freqs);
    std::vector<double> targets(60);
    for (std::size_t i = 0; i < 60; ++i)
        targets[i] = 0.7 * psi(i, 2) - 1.3 * psi(i, 9);
    auto [loss, grads] = loss_and_grad(m, x, targets);
    CHECK(loss <= 1e-18);
    const std::vector<double> flat = pack_grads(m, grads);
    for (double g : flat) CHECK(std::abs(g) <= 1e-6);
}

TEST_CASE("loss_and_grad: single block matches finite differences") {
    Rng rng(607);
    for (int trial = 0; trial < 3; ++trial) {
        const ModelParams m = small_model(800 + trial, 1);
        const DenseMatrix x = test::random_matrix(rng, 25, 2);
        const std::vector<double> y = test::random_vector(rng, 25);
        CHECK(fd_worst_error(m, x, y) < 1e-4);
    }
}

TEST_CASE("loss_and_grad: frozen frequencies, warp-only gradient") {
    Rng rng(608);
    ModelParams m = small_model(43, 1);
    m.learn_freqs = false;
    const DenseMatrix x = test::random_matrix(rng, 25, 2);
    const std::vector<double> y = test::random_vector(rng, 25);
    CHECK(fd_worst_error(m, x, y) < 1e-4);
}

TEST_CASE("loss_and_grad: two blocks confirm cross-block gradient flow") {
    Rng rng(609);
    for (int trial = 0; trial < 2; ++trial) {
        const ModelParams m = small_model(900 + trial, 2);
        const DenseMatrix x = test::random_matrix(rng, 20, 2);
        const std::vector<double> y = test::random_vector(rng, 20);
        CHECK(fd_worst_error(m, x, y) < 1e-4);
    }
}

TEST_CASE("loss_and_grad: cascade (no warp) gradient flow") {
    Rng rng(610);
    const ModelParams m = small_model(47, 2, 4, 4, 1e-2, /*use_warp=*/false);
    const DenseMatrix x = test::random_matrix(rng, 20, 2);
    const std::vector<double> y = test::random_vector(rng, 20);
    CHECK(fd_worst_error(m, x, y) < 1e-4);
}

TEST_CASE("grad_check drives the full model loss") {
    // The optim checker and the model gradients agree end to end.
    Rng rng(611);
    ModelParams m = small_model(53, 2);
    const DenseMatrix x = test::random_matrix(rng, 20, 2);
    const std::vector<double> y = test::random_vector(rng, 20);
    auto [loss, grads] = loss_and_grad(m, x, y);
    (void)loss;
    auto probe = [&](const std::vector<double>& p) {
        ModelParams q = m;
        unpack_params(p, q);
        return loss_and_grad(q, x, y).first;
    };
    const GradCheckReport report =
        grad_check(probe, pack_params(m), pack_grads(m, grads), 1e-6, 1e-4);
    CHECK(report.passed);
}

TEST_CASE("static equivalence: frozen-warp model equals the cascade") {
    // Same seed, same frequencies; the zero-init output head keeps uv = 0,
    // and per-coordinate Adam makes the frequency trajectories identical.
    auto [samples, grid] = generate("warped_harmonic", 3, 64, 0.0);

    TrainConfig cfg;
    cfg.benchmark = "warped_harmonic";
    cfg.seed = 3;
    cfg.iters = 25;
    cfg.blocks = 2;
    cfg.freqs = 4;
    cfg.hidden = 8;
    cfg.n_train = 64;
    cfg.noise_sigma = 0.0;

    // Cascade through the trainer.
    cfg.method = Method::kCascade;
    std::vector<MetricsRow> metrics_cascade;
    const Checkpoint ck_cascade = train(cfg, samples, metrics_cascade);

    // DeepVekua with the warp frozen at its zero-map init: train by hand
    // with the same optimizer so only frequencies move.
    ModelParams m = model_init(3, 2, 2, 4, 8, cfg.lambda, /*use_warp=*/true);
    m.learn_warp = false;
    const AffineNorm norm = fit_normalization(samples.x);
    const DenseMatrix xn = norm.apply(samples.x);
    std::vector<double> flat = pack_params(m);
    AdamState adam(flat.size(), cfg.lr);
    for (std::size_t it = 0; it < cfg.iters; ++it) {
        unpack_params(flat, m);
        auto [loss, grads] = loss_and_grad(m, xn, samples.y);
        (void)loss;
        adam_step(adam, flat, pack_grads(m, grads));
    }
    unpack_params(flat, m);
    const ForwardResult fwd = forward_train(m, xn, samples.y, false);

    const std::vector<double> pred_frozen =
        predict(m, fwd.solved, norm.apply(grid.x));
    const std::vector<double> pred_cascade =
        checkpoint_predict(ck_cascade, grid.x);
    REQUIRE(pred_frozen.size() == pred_cascade.size());
    for (std::size_t i = 0; i < pred_frozen.size(); ++i)
        CHECK(std::abs(pred_frozen[i] - pred_cascade[i]) <= 1e-12);
}

TEST_CASE("train: iters = 0 is the init solve") {
    auto [samples, grid] = generate("sdf_square", 5, 64, 0.0);
    (void)grid;
    TrainConfig cfg;
    cfg.benchmark = "sdf_square";
    cfg.method = Method::kDeepVekua;
    cfg.seed = 5;
    cfg.iters = 0;
    cfg.blocks = 2;
    cfg.freqs = 4;
    cfg.hidden = 8;
    cfg.n_train = 64;
    cfg.noise_sigma = 0.0;
    std::vector<MetricsRow> metrics;
    const Checkpoint ckpt = train(cfg, samples, metrics);
    REQUIRE(metrics.size() == 1);
    CHECK(metrics[0].iter == 0);

    // The checkpoint must reproduce that same init-solve MSE.
    const std::vector<double> pred = checkpoint_predict(ckpt, samples.x);
    CHECK(std::abs(mse(pred, samples.y) - metrics[0].train_mse) <= 1e-12);

    // And the model parameters are untouched initialization.
    const ModelParams fresh =
        model_init(5, 2, 2, 4, 8, cfg.lambda, true);
    CHECK(ckpt.model.blocks[0].freqs.re == fresh.blocks[0].freqs.re);
    CHECK(ckpt.model.blocks[1].warp.w_in.data ==
          fresh.blocks[1].warp.w_in.data);
}

TEST_CASE("train: lr = 0 keeps parameters and MSE constant") {
    auto [samples, grid] = generate("warped_harmonic", 11, 48, 0.0);
    (void)grid;
    TrainConfig cfg;
    cfg.benchmark = "warped_harmonic";
    cfg.method = Method::kDeepVekua;
    cfg.seed = 11;
    cfg.iters = 5;
    cfg.lr = 0.0;
    cfg.blocks = 1;
    cfg.freqs = 4;
    cfg.hidden = 4;
    cfg.n_train = 48;
    cfg.noise_sigma = 0.0;
    std::vector<MetricsRow> metrics;
    train(cfg, samples, metrics);
    REQUIRE(metrics.size() == 6);
    for (const MetricsRow& row : metrics)
        CHECK(row.train_mse == metrics[0].train_mse);
}

TEST_CASE("train: short run reduces the training MSE") {
    auto [samples, grid] = generate("warped_harmonic", 1, 128, 0.0);
    (void)grid;
    TrainConfig cfg;
    cfg.benchmark = "warped_harmonic";
    cfg.method = Method::kDeepVekua;
    cfg.seed = 1;
    cfg.iters = 60;
    cfg.blocks = 2;
    cfg.freqs = 8;
    cfg.hidden = 16;
    cfg.n_train = 128;
    cfg.noise_sigma = 0.0;
    std::vector<MetricsRow> metrics;
    train(cfg, samples, metrics);
    REQUIRE(metrics.size() == 61);
    CHECK(metrics.back().train_mse < metrics.front().train_mse);
}

TEST_CASE("model packing round-trips") {
    ModelParams m = small_model(59, 2);
    const std::vector<double> flat = pack_params(m);
    ModelParams n = small_model(60, 2); // different values, same shapes
    unpack_params(flat, n);
    CHECK(pack_params(n) == flat);
    CHECK(n.blocks[1].warp.w_in.data == m.blocks[1].warp.w_in.data);
    CHECK(n.blocks[0].freqs.im == m.blocks[0].freqs.im);
}
