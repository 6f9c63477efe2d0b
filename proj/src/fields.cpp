#include "vekua/fields.hpp"

#include <cmath>
#include <numbers>

#include "vekua/model.hpp"
#include "vekua/rng.hpp"

namespace vekua {

namespace {

using std::numbers::pi;

// Shared distortion map: a smooth sinusoidal shear of the unit box.
inline void distort(double x, double y, double& px, double& py) {
    px = x + 0.3 * std::sin(pi * y);
    py = y + 0.3 * std::sin(pi * x);
}

double warped_harmonic(const double* c) {
    double px, py;
    distort(c[0], c[1], px, py);
    return std::sin(4.0 * pi * px);
}

double advected_gaussian(const double* c) {
    // Unit-amplitude bump; sigma chosen so the feature stays localized
    // inside the box after the distortion.
    constexpr double sigma = 0.35;
    double px, py;
    distort(c[0], c[1], px, py);
    return std::exp(-(px * px + py * py) / (2.0 * sigma * sigma));
}

double sdf_square(const double* c) {
    // Exact signed distance to the axis-aligned square of half-width 0.5,
    // negative inside.
    constexpr double half = 0.5;
    const double q1 = std::abs(c[0]) - half;
    const double q2 = std::abs(c[1]) - half;
    const double outside =
        std::hypot(std::max(q1, 0.0), std::max(q2, 0.0));
    const double inside = std::min(std::max(q1, q2), 0.0);
    return outside + inside;
}

double seismic_packets(const double* c) {
    // Three plane waves under Gaussian envelopes.
    constexpr double theta[3] = {0.35, 1.75, 2.60};
    constexpr double omega[3] = {10.0, 14.0, 8.0};
    constexpr double center[3] = {-0.20, 0.15, 0.40};
    constexpr double width[3] = {0.35, 0.25, 0.45};
    constexpr double amp[3] = {1.0, 0.7, 0.5};
    constexpr double phase[3] = {0.0, 0.8, 1.9};
    double acc = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double proj =
            c[0] * std::cos(theta[j]) + c[1] * std::sin(theta[j]);
        const double arg = (proj - center[j]) / width[j];
        acc += amp[j] * std::exp(-0.5 * arg * arg) *
               std::cos(omega[j] * proj + phase[j]);
    }
    return acc;
}

double chirp1d(const double* c) {
    const double t = c[0];
    return std::sin(20.0 * pi * t * t);
}

const std::vector<Benchmark> kBenchmarks = {
    {"warped_harmonic", 2, 256, 0.0},
    {"advected_gaussian", 2, 256, 0.0},
    {"sdf_square", 2, 256, 0.0},
    {"seismic_packets", 2, 256, 0.0},
    {"chirp1d", 1, 128, 0.1},
};

} // namespace

const std::vector<Benchmark>& benchmark_list() { return kBenchmarks; }

const Benchmark& benchmark_info(const std::string& name) {
    for (const Benchmark& b : kBenchmarks)
        if (b.name == name) return b;
    throw UnknownBenchmark(name);
}

double benchmark_truth(const std::string& name, const double* coord) {
    if (name == "warped_harmonic") return warped_harmonic(coord);
    if (name == "advected_gaussian") return advected_gaussian(coord);
    if (name == "sdf_square") return sdf_square(coord);
    if (name == "seismic_packets") return seismic_packets(coord);
    if (name == "chirp1d") return chirp1d(coord);
    throw UnknownBenchmark(name);
}

std::pair<SampleSet, EvalGrid> generate(const std::string& benchmark,
                                        std::uint64_t seed,
                                        std::size_t n_train,
                                        double noise_sigma) {
    const Benchmark& info = benchmark_info(benchmark);
    if (n_train < 1)
        throw std::invalid_argument("generate: n_train must be >= 1");
    const std::size_t d = info.dim;

    SampleSet samples;
    samples.benchmark = benchmark;
    samples.seed = seed;
    samples.noise_sigma = noise_sigma;
    samples.x = DenseMatrix(n_train, d);
    samples.y.resize(n_train);
    {
        Rng coords(derive_seed(seed, streams::kSampleCoords));
        for (std::size_t i = 0; i < n_train; ++i)
            for (std::size_t a = 0; a < d; ++a)
                samples.x(i, a) = coords.uniform(-1.0, 1.0);
    }
    for (std::size_t i = 0; i < n_train; ++i)
        samples.y[i] = benchmark_truth(benchmark, samples.x.data.data() + i * d);
    if (noise_sigma != 0.0) {
        Rng noise(derive_seed(seed, streams::kSampleNoise));
        for (double& y : samples.y) y += noise_sigma * noise.normal();
    }

    EvalGrid grid;
    grid.resolution = d == 1 ? 512 : 64;
    const std::size_t r = grid.resolution;
    const std::size_t total = d == 1 ? r : r * r;
    grid.x = DenseMatrix(total, d);
    grid.y_true.resize(total);
    auto axis = [&](std::size_t i) {
        return -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(r - 1);
    };
    if (d == 1) {
        for (std::size_t i = 0; i < r; ++i) grid.x(i, 0) = axis(i);
    } else {
        std::size_t row = 0;
        for (std::size_t iy = 0; iy < r; ++iy)
            for (std::size_t ix = 0; ix < r; ++ix, ++row) {
                grid.x(row, 0) = axis(ix);
                grid.x(row, 1) = axis(iy);
            }
    }
    for (std::size_t i = 0; i < total; ++i)
        grid.y_true[i] = benchmark_truth(benchmark, grid.x.data.data() + i * d);

    return {std::move(samples), std::move(grid)};
}

double mse_on_grid(
    const std::function<std::vector<double>(const DenseMatrix&)>& predict_fn,
    const EvalGrid& grid) {
    const std::vector<double> pred = predict_fn(grid.x);
    return mse(pred, grid.y_true);
}

} // namespace vekua
