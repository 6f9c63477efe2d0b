#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "vekua/basis.hpp"

using namespace vekua;

namespace {

ComplexBuffer make_zeta(std::initializer_list<double> re,
                        std::initializer_list<double> im) {
    ComplexBuffer z;
    z.re = re;
    z.im = im;
    return z;
}

FrequencySet make_freqs(std::initializer_list<double> re,
                        std::initializer_list<double> im) {
    FrequencySet f;
    f.re = re;
    f.im = im;
    return f;
}

ComplexBuffer random_zeta(Rng& rng, std::size_t n, double scale = 1.5) {
    ComplexBuffer z;
    z.re = test::random_vector(rng, n, -scale, scale);
    z.im = test::random_vector(rng, n, -scale, scale);
    return z;
}

FrequencySet random_freqs(Rng& rng, std::size_t k, double scale = 3.0) {
    FrequencySet f;
    f.re = test::random_vector(rng, k, -scale, scale);
    f.im = test::random_vector(rng, k, -scale, scale);
    return f;
}

} // namespace

TEST_CASE("embed_complex: 2D is coordinates plus warp") {
    DenseMatrix x(1, 2);
    x(0, 0) = 0.5;
    x(0, 1) = -0.5;
    SUBCASE("zero warp reduces to z = x") {
        const ComplexBuffer z = embed_complex(x, DenseMatrix(1, 2));
        CHECK(z.re[0] == 0.5);
        CHECK(z.im[0] == -0.5);
    }
    SUBCASE("pure translation") {
        DenseMatrix origin(1, 2), uv(1, 2);
        uv(0, 0) = 1.0;
        uv(0, 1) = -1.0;
        const ComplexBuffer z = embed_complex(origin, uv);
        CHECK(z.re[0] == 1.0);
        CHECK(z.im[0] == -1.0);
    }
}

TEST_CASE("embed_complex: 1D lifts onto a warped curve") {
    DenseMatrix x(1, 1);
    x(0, 0) = 0.3;
    DenseMatrix uv(1, 2);
    uv(0, 0) = 0.1;
    uv(0, 1) = 0.2;
    const ComplexBuffer z = embed_complex(x, uv);
    CHECK(z.re[0] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(z.im[0] == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("embed_complex: rejects d outside {1, 2}") {
    CHECK_THROWS_AS(embed_complex(DenseMatrix(2, 3), DenseMatrix(2, 2)),
                    UnsupportedDimension);
}

TEST_CASE("vekua_basis: zero coordinate row is [0, 1, 0, 0]") {
    const BasisMatrix psi = vekua_basis(make_zeta({0.0}, {0.0}),
                                        make_freqs({1.7, -0.3}, {0.2, 2.5}));
    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(psi(0, j) == 0.0);       // sin
        CHECK(psi(0, 2 + j) == 1.0);   // cos
        CHECK(psi(0, 4 + j) == 0.0);   // |z| sin
        CHECK(psi(0, 6 + j) == 0.0);   // |z| cos
    }
}

TEST_CASE("vekua_basis: hand-evaluated scalar cases") {
    SUBCASE("zeta = 1, f = pi/2: row [1, 0, 1, 0]") {
        const BasisMatrix psi = vekua_basis(
            make_zeta({1.0}, {0.0}), make_freqs({std::numbers::pi / 2}, {0.0}));
        CHECK(psi(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(psi(0, 1) == doctest::Approx(0.0).scale(1).epsilon(1e-15));
        CHECK(psi(0, 2) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(psi(0, 3) == doctest::Approx(0.0).scale(1).epsilon(1e-15));
    }
    SUBCASE("zeta = i, f = i: phi = Re(i * conj(i)) = 1") {
        const BasisMatrix psi =
            vekua_basis(make_zeta({0.0}, {1.0}), make_freqs({0.0}, {1.0}));
        CHECK(psi(0, 0) == doctest::Approx(0.84147098480789650).epsilon(1e-12));
        CHECK(psi(0, 1) == doctest::Approx(0.54030230586813977).epsilon(1e-12));
        CHECK(psi(0, 2) == doctest::Approx(0.84147098480789650).epsilon(1e-12));
        CHECK(psi(0, 3) == doctest::Approx(0.54030230586813977).epsilon(1e-12));
    }
}

TEST_CASE("vekua_basis: column boundedness invariants") {
    Rng rng(201);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0, 15));
        const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform(0, 6));
        const ComplexBuffer zeta = random_zeta(rng, n, 3.0);
        const FrequencySet freqs = random_freqs(rng, k, 5.0);
        const BasisMatrix psi = vekua_basis(zeta, freqs);
        double max_mag = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            max_mag = std::max(max_mag, std::hypot(zeta.re[i], zeta.im[i]));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < 4 * k; ++j) {
                if (j < 2 * k)
                    CHECK(std::abs(psi(i, j)) <= 1.0);
                else
                    CHECK(std::abs(psi(i, j)) <= max_mag * (1 + 1e-15));
            }
    }
}

TEST_CASE("vekua_basis: joint rotation invariance") {
    // phi and |zeta| are both invariant under rotating zeta and f together.
    Rng rng(202);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0, 8));
        const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform(0, 4));
        const ComplexBuffer zeta = random_zeta(rng, n);
        const FrequencySet freqs = random_freqs(rng, k);
        const double theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
        const double c = std::cos(theta), s = std::sin(theta);

        ComplexBuffer zr = zeta;
        FrequencySet fr = freqs;
        for (std::size_t i = 0; i < n; ++i) {
            zr.re[i] = c * zeta.re[i] - s * zeta.im[i];
            zr.im[i] = s * zeta.re[i] + c * zeta.im[i];
        }
        for (std::size_t j = 0; j < k; ++j) {
            fr.re[j] = c * freqs.re[j] - s * freqs.im[j];
            fr.im[j] = s * freqs.re[j] + c * freqs.im[j];
        }

        const BasisMatrix a = vekua_basis(zeta, freqs);
        const BasisMatrix b = vekua_basis(zr, fr);
        for (std::size_t i = 0; i < a.data.size(); ++i)
            CHECK(std::abs(a.data[i] - b.data[i]) <= 1e-12);
    }
}

TEST_CASE("vekua_basis: conjugation symmetry under f -> -f") {
    Rng rng(203);
    const std::size_t n = 7, k = 3;
    const ComplexBuffer zeta = random_zeta(rng, n);
    const FrequencySet freqs = random_freqs(rng, k);
    FrequencySet neg = freqs;
    for (std::size_t j = 0; j < k; ++j) {
        neg.re[j] = -freqs.re[j];
        neg.im[j] = -freqs.im[j];
    }
    const BasisMatrix a = vekua_basis(zeta, freqs);
    const BasisMatrix b = vekua_basis(zeta, neg);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            CHECK(std::abs(a(i, j) + b(i, j)) <= 1e-12);                 // sin
            CHECK(std::abs(a(i, k + j) - b(i, k + j)) <= 1e-12);         // cos
            CHECK(std::abs(a(i, 2 * k + j) + b(i, 2 * k + j)) <= 1e-12); // ms
            CHECK(std::abs(a(i, 3 * k + j) - b(i, 3 * k + j)) <= 1e-12); // mc
        }
}

TEST_CASE("vekua_basis_vjp: zero upstream gives zero gradients") {
    Rng rng(204);
    const ComplexBuffer zeta = random_zeta(rng, 5);
    const FrequencySet freqs = random_freqs(rng, 3);
    const BasisVjp vjp = vekua_basis_vjp(zeta, freqs, DenseMatrix(5, 12));
    for (double v : vjp.d_zeta.data) CHECK(v == 0.0);
    for (double v : vjp.d_freqs.re) CHECK(v == 0.0);
    for (double v : vjp.d_freqs.im) CHECK(v == 0.0);
}

TEST_CASE("vekua_basis_vjp: origin row uses the zero radial subgradient") {
    // Upstream only on the radial columns of a zeta = 0 row: both the
    // envelope factor (|zeta| = 0) and the radial direction (defined as 0)
    // kill every gradient.
    const ComplexBuffer zeta = make_zeta({0.0}, {0.0});
    const FrequencySet freqs = make_freqs({1.3, -0.4}, {0.7, 2.1});
    DenseMatrix d_psi(1, 8);
    d_psi(0, 4) = 1.0;
    d_psi(0, 5) = -2.0;
    d_psi(0, 6) = 0.5;
    d_psi(0, 7) = 3.0;
    const BasisVjp vjp = vekua_basis_vjp(zeta, freqs, d_psi);
    CHECK(vjp.d_zeta(0, 0) == 0.0);
    CHECK(vjp.d_zeta(0, 1) == 0.0);
    for (double v : vjp.d_freqs.re) CHECK(v == 0.0);
    for (double v : vjp.d_freqs.im) CHECK(v == 0.0);
}

TEST_CASE("vekua_basis_vjp: matches central finite differences") {
    Rng rng(205);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0, 7));
        const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform(0, 3));
        ComplexBuffer zeta = random_zeta(rng, n);
        // Keep clear of the radial subgradient point.
        for (std::size_t i = 0; i < n; ++i)
            if (std::hypot(zeta.re[i], zeta.im[i]) < 1e-3) zeta.re[i] += 0.5;
        const FrequencySet freqs = random_freqs(rng, k);
        DenseMatrix upstream = test::random_matrix(rng, n, 4 * k);

        const BasisVjp vjp = vekua_basis_vjp(zeta, freqs, upstream);

        auto probe = [&](const ComplexBuffer& z, const FrequencySet& f) {
            const BasisMatrix psi = vekua_basis(z, f);
            double acc = 0.0;
            for (std::size_t i = 0; i < psi.data.size(); ++i)
                acc += psi.data[i] * upstream.data[i];
            return acc;
        };

        // Flatten (zeta.re, zeta.im, freqs.re, freqs.im) into one probe.
        auto eval_flat = [&](const std::vector<double>& flat) {
            ComplexBuffer z = zeta;
            FrequencySet f = freqs;
            std::size_t pos = 0;
            for (std::size_t i = 0; i < n; ++i) z.re[i] = flat[pos++];
            for (std::size_t i = 0; i < n; ++i) z.im[i] = flat[pos++];
            for (std::size_t j = 0; j < k; ++j) f.re[j] = flat[pos++];
            for (std::size_t j = 0; j < k; ++j) f.im[j] = flat[pos++];
            return probe(z, f);
        };
        std::vector<double> flat, analytic;
        for (std::size_t i = 0; i < n; ++i) flat.push_back(zeta.re[i]);
        for (std::size_t i = 0; i < n; ++i) flat.push_back(zeta.im[i]);
        for (std::size_t j = 0; j < k; ++j) flat.push_back(freqs.re[j]);
        for (std::size_t j = 0; j < k; ++j) flat.push_back(freqs.im[j]);
        for (std::size_t i = 0; i < n; ++i) analytic.push_back(vjp.d_zeta(i, 0));
        for (std::size_t i = 0; i < n; ++i) analytic.push_back(vjp.d_zeta(i, 1));
        for (std::size_t j = 0; j < k; ++j) analytic.push_back(vjp.d_freqs.re[j]);
        for (std::size_t j = 0; j < k; ++j) analytic.push_back(vjp.d_freqs.im[j]);

        CHECK(test::max_grad_rel_error(eval_flat, flat, analytic) < 1e-5);
    }
}
