#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "vekua/fields.hpp"

using namespace vekua;

TEST_CASE("benchmark closed forms at pinned points") {
    const double origin2[2] = {0.0, 0.0};
    CHECK(benchmark_truth("sdf_square", origin2) == -0.5);
    CHECK(benchmark_truth("warped_harmonic", origin2) == 0.0);

    const double t0[1] = {0.0};
    CHECK(benchmark_truth("chirp1d", t0) == 0.0);
    const double t_half[1] = {0.5};
    // sin(20 pi * 0.25) = sin(5 pi) = 0
    CHECK(std::abs(benchmark_truth("chirp1d", t_half)) <= 1e-14);
}

TEST_CASE("generate: unknown benchmark") {
    CHECK_THROWS_AS(generate("nope", 1, 10, 0.0), UnknownBenchmark);
}

TEST_CASE("generate: deterministic, in-box, noise-free targets exact") {
    auto [a, grid_a] = generate("warped_harmonic", 7, 100, 0.0);
    auto [b, grid_b] = generate("warped_harmonic", 7, 100, 0.0);
    CHECK(a.x.data == b.x.data);
    CHECK(a.y == b.y);
    CHECK(grid_a.y_true == grid_b.y_true);

    for (double v : a.x.data) CHECK(std::abs(v) <= 1.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a.y[i] == benchmark_truth("warped_harmonic", a.x.data.data() + 2 * i));

    auto [c, grid_c] = generate("warped_harmonic", 8, 100, 0.0);
    (void)grid_c;
    CHECK(a.x.data != c.x.data);
}

TEST_CASE("generate: grid shapes per dimension") {
    auto [s2, g2] = generate("advected_gaussian", 1, 16, 0.0);
    CHECK(s2.dim() == 2);
    CHECK(g2.resolution == 64);
    CHECK(g2.x.rows == 64 * 64);
    auto [s1, g1] = generate("chirp1d", 1, 16, 0.0);
    CHECK(s1.dim() == 1);
    CHECK(g1.resolution == 512);
    CHECK(g1.x.rows == 512);
}

TEST_CASE("generate: noise is seeded and has the requested scale") {
    auto [clean, g0] = generate("chirp1d", 3, 128, 0.0);
    auto [noisy, g1] = generate("chirp1d", 3, 128, 0.1);
    (void)g0;
    (void)g1;
    CHECK(clean.x.data == noisy.x.data);
    double acc = 0.0;
    for (std::size_t i = 0; i < clean.size(); ++i) {
        const double delta = noisy.y[i] - clean.y[i];
        CHECK(delta != 0.0);
        acc += delta * delta;
    }
    const double rms = std::sqrt(acc / static_cast<double>(clean.size()));
    CHECK(rms > 0.05);
    CHECK(rms < 0.2);
}

TEST_CASE("sdf_square: eikonal away from the medial axes") {
    // |grad T| = 1 wherever the nearest-feature assignment is unambiguous;
    // skip the diagonals (|x| == |y|), where the minimum switches branches.
    const double h = 1e-5;
    std::size_t checked = 0;
    for (double x = -0.93; x < 1.0; x += 0.13) {
        for (double y = -0.91; y < 1.0; y += 0.11) {
            if (std::abs(std::abs(x) - std::abs(y)) < 0.05) continue;
            const double xp[2] = {x + h, y}, xm[2] = {x - h, y};
            const double yp[2] = {x, y + h}, ym[2] = {x, y - h};
            const double gx = (benchmark_truth("sdf_square", xp) -
                               benchmark_truth("sdf_square", xm)) /
                              (2 * h);
            const double gy = (benchmark_truth("sdf_square", yp) -
                               benchmark_truth("sdf_square", ym)) /
                              (2 * h);
            CHECK(std::abs(std::hypot(gx, gy) - 1.0) <= 1e-3);
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("mse_on_grid: exact predictor, constant offset, zero predictor") {
    auto [samples, grid] = generate("warped_harmonic", 2, 16, 0.0);
    (void)samples;

    auto truth_fn = [&](const DenseMatrix& x) {
        std::vector<double> out(x.rows);
        for (std::size_t i = 0; i < x.rows; ++i)
            out[i] = benchmark_truth("warped_harmonic", x.data.data() + 2 * i);
        return out;
    };
    CHECK(mse_on_grid(truth_fn, grid) == 0.0);

    auto offset_fn = [&](const DenseMatrix& x) {
        std::vector<double> out = truth_fn(x);
        for (double& v : out) v += 1.0;
        return out;
    };
    CHECK(mse_on_grid(offset_fn, grid) == doctest::Approx(1.0).epsilon(1e-12));

    // Zero predictor: MSE equals the grid mean of the squared truth, which
    // for a full number of sine periods sits near 1/2.
    auto zero_fn = [&](const DenseMatrix& x) {
        return std::vector<double>(x.rows, 0.0);
    };
    double mean_sq = 0.0;
    for (double v : grid.y_true) mean_sq += v * v;
    mean_sq /= static_cast<double>(grid.y_true.size());
    const double got = mse_on_grid(zero_fn, grid);
    CHECK(got == doctest::Approx(mean_sq).epsilon(1e-12));
    CHECK(std::abs(got - 0.5) < 0.02);
}
