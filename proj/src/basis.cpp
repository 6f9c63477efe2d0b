#include "vekua/basis.hpp"

#include <cmath>

#include "vekua/rng.hpp"

namespace vekua {

ComplexBuffer embed_complex(const DenseMatrix& x, const DenseMatrix& uv) {
    const std::size_t n = x.rows;
    const std::size_t d = x.cols;
    if (d != 1 && d != 2) throw UnsupportedDimension(d);
    if (uv.rows != n || uv.cols != 2)
        throw DimensionMismatch("embed_complex: uv must be N x 2");

    ComplexBuffer z;
    z.re.resize(n);
    z.im.resize(n);
    if (d == 2) {
        for (std::size_t i = 0; i < n; ++i) {
            z.re[i] = x(i, 0) + uv(i, 0);
            z.im[i] = x(i, 1) + uv(i, 1);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            z.re[i] = x(i, 0) + uv(i, 0);
            z.im[i] = uv(i, 1);
        }
    }
    return z;
}

BasisMatrix vekua_basis(const ComplexBuffer& zeta, const FrequencySet& freqs) {
    const std::size_t n = zeta.size();
    const std::size_t k = freqs.size();
    BasisMatrix psi(n, 4 * k);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = zeta.re[i];
        const double y = zeta.im[i];
        const double mag = std::sqrt(x * x + y * y);
        double* row = psi.data.data() + i * 4 * k;
        for (std::size_t j = 0; j < k; ++j) {
            const double phi = x * freqs.re[j] + y * freqs.im[j];
            const double s = std::sin(phi);
            const double c = std::cos(phi);
            row[j] = s;
            row[k + j] = c;
            row[2 * k + j] = mag * s;
            row[3 * k + j] = mag * c;
        }
    }
    return psi;
}

BasisVjp vekua_basis_vjp(const ComplexBuffer& zeta, const FrequencySet& freqs,
                         const DenseMatrix& d_psi) {
    const std::size_t n = zeta.size();
    const std::size_t k = freqs.size();
    if (d_psi.rows != n || d_psi.cols != 4 * k)
        throw DimensionMismatch("vekua_basis_vjp: d_psi must be N x 4K");

    BasisVjp out;
    out.d_zeta = DenseMatrix(n, 2);
    out.d_freqs.re.assign(k, 0.0);
    out.d_freqs.im.assign(k, 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        const double x = zeta.re[i];
        const double y = zeta.im[i];
        const double mag = std::sqrt(x * x + y * y);
        const double* row = d_psi.data.data() + i * 4 * k;
        double dx = 0.0, dy = 0.0, dmag = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double u = freqs.re[j];
            const double v = freqs.im[j];
            const double phi = x * u + y * v;
            const double s = std::sin(phi);
            const double c = std::cos(phi);
            const double gs = row[j];
            const double gc = row[k + j];
            const double gms = row[2 * k + j];
            const double gmc = row[3 * k + j];
            // d/dphi of [s, c, m s, m c] contracted with the upstream row.
            const double dphi = (gs + mag * gms) * c - (gc + mag * gmc) * s;
            dmag += gms * s + gmc * c;
            dx += dphi * u;
            dy += dphi * v;
            out.d_freqs.re[j] += dphi * x;
            out.d_freqs.im[j] += dphi * y;
        }
        if (mag > 0.0) {
            dx += dmag * (x / mag);
            dy += dmag * (y / mag);
        }
        out.d_zeta(i, 0) = dx;
        out.d_zeta(i, 1) = dy;
    }
    return out;
}

FrequencySet freqs_init(std::uint64_t seed, std::size_t k, double sigma_f) {
    Rng rng(seed);
    FrequencySet f;
    f.re.resize(k);
    f.im.resize(k);
    for (std::size_t j = 0; j < k; ++j) f.re[j] = sigma_f * rng.normal();
    for (std::size_t j = 0; j < k; ++j) f.im[j] = sigma_f * rng.normal();
    return f;
}

} // namespace vekua
