#include "vekua/warp.hpp"

#include <cmath>
#include <numbers>

#include "vekua/rng.hpp"

namespace vekua {

namespace {
constexpr double kOmega0 = 6.0;
} // namespace

WarpParams warp_init(std::uint64_t seed, std::size_t d, std::size_t hidden) {
    if (d != 1 && d != 2) throw UnsupportedDimension(d);
    if (hidden < 1)
        throw std::invalid_argument("warp_init: hidden must be >= 1");

    Rng rng(seed);
    WarpParams p;
    p.w_in = DenseMatrix(d, hidden);
    const double bound = kOmega0 / static_cast<double>(d);
    for (double& v : p.w_in.data) v = rng.uniform(-bound, bound);
    p.b.resize(hidden);
    for (double& v : p.b)
        v = rng.uniform(-std::numbers::pi, std::numbers::pi);
    p.w_out = DenseMatrix(hidden, 2); // zero map: cascade starts static
    return p;
}

DenseMatrix warp_forward(const WarpParams& p, const DenseMatrix& x,
                         WarpCache* cache) {
    const std::size_t n = x.rows;
    const std::size_t d = p.in_dim();
    const std::size_t hid = p.hidden();
    if (x.cols != d)
        throw DimensionMismatch("warp_forward: x cols != warp input dim");

    DenseMatrix h(n, hid), cz(n, hid);
    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = x.data.data() + i * d;
        double* hi = h.data.data() + i * hid;
        double* ci = cz.data.data() + i * hid;
        for (std::size_t j = 0; j < hid; ++j) {
            double z = p.b[j];
            for (std::size_t a = 0; a < d; ++a) z += xi[a] * p.w_in(a, j);
            hi[j] = std::sin(z);
            ci[j] = std::cos(z);
        }
    }
    DenseMatrix uv = matmul(h, p.w_out);
    if (cache != nullptr) {
        cache->x = x;
        cache->h = std::move(h);
        cache->cos_z = std::move(cz);
    }
    return uv;
}

WarpParams warp_vjp(const WarpParams& p, const WarpCache& cache,
                    const DenseMatrix& d_uv) {
    const std::size_t n = cache.h.rows;
    const std::size_t hid = p.hidden();
    const std::size_t d = p.in_dim();
    if (d_uv.rows != n || d_uv.cols != 2)
        throw DimensionMismatch("warp_vjp: d_uv must be N x 2");

    WarpParams g;
    g.w_in = DenseMatrix(d, hid);
    g.b.assign(hid, 0.0);
    g.w_out = DenseMatrix(hid, 2);

    // d_w_out = h^T d_uv
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < hid; ++j) {
            const double hij = cache.h(i, j);
            g.w_out(j, 0) += hij * d_uv(i, 0);
            g.w_out(j, 1) += hij * d_uv(i, 1);
        }

    // d_pre = (d_uv w_out^T) .* cos(z); then fold into w_in and b.
    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = cache.x.data.data() + i * d;
        for (std::size_t j = 0; j < hid; ++j) {
            const double dh =
                d_uv(i, 0) * p.w_out(j, 0) + d_uv(i, 1) * p.w_out(j, 1);
            const double dz = dh * cache.cos_z(i, j);
            g.b[j] += dz;
            for (std::size_t a = 0; a < d; ++a) g.w_in(a, j) += xi[a] * dz;
        }
    }
    return g;
}

} // namespace vekua
