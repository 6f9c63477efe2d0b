#include "vekua/baselines.hpp"

#include <cmath>

#include "vekua/rng.hpp"

namespace vekua {

// ---------------------------------------------------------------------------
// SIREN
// ---------------------------------------------------------------------------

SirenParams siren_init(std::uint64_t seed, std::size_t d, std::size_t hidden,
                       std::size_t hidden_layers) {
    if (hidden_layers < 1)
        throw std::invalid_argument("siren_init: need at least one layer");
    SirenParams p;
    p.omega0 = 30.0;
    std::vector<std::size_t> dims;
    dims.push_back(d);
    for (std::size_t i = 0; i < hidden_layers; ++i) dims.push_back(hidden);
    dims.push_back(1);

    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        Rng rng(derive_seed(seed, streams::kSirenLayer + l));
        const std::size_t fan_in = dims[l];
        const std::size_t fan_out = dims[l + 1];
        const double w_bound =
            l == 0 ? 1.0 / static_cast<double>(fan_in)
                   : std::sqrt(6.0 / static_cast<double>(fan_in)) / p.omega0;
        DenseMatrix w(fan_in, fan_out);
        for (double& v : w.data) v = rng.uniform(-w_bound, w_bound);
        const double b_bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        std::vector<double> b(fan_out);
        for (double& v : b) v = rng.uniform(-b_bound, b_bound);
        p.w.push_back(std::move(w));
        p.b.push_back(std::move(b));
    }
    return p;
}

std::vector<double> siren_forward(const SirenParams& p, const DenseMatrix& x,
                                  SirenCache* cache) {
    const std::size_t n = x.rows;
    const std::size_t layers = p.w.size(); // sine layers + linear head
    if (x.cols != p.w[0].rows)
        throw DimensionMismatch("siren_forward: x cols != first layer fan-in");

    if (cache != nullptr) {
        cache->activations.clear();
        cache->cos_z.clear();
        cache->activations.push_back(x);
    }

    DenseMatrix a = x;
    for (std::size_t l = 0; l + 1 < layers; ++l) {
        const DenseMatrix& w = p.w[l];
        DenseMatrix next(n, w.cols), cz(n, w.cols);
        for (std::size_t i = 0; i < n; ++i) {
            const double* ai = a.data.data() + i * w.rows;
            double* ni = next.data.data() + i * w.cols;
            double* ci = cz.data.data() + i * w.cols;
            for (std::size_t j = 0; j < w.cols; ++j) {
                double z = p.b[l][j];
                for (std::size_t k = 0; k < w.rows; ++k)
                    z += ai[k] * w(k, j);
                z *= p.omega0;
                ni[j] = std::sin(z);
                ci[j] = std::cos(z);
            }
        }
        a = std::move(next);
        if (cache != nullptr) {
            cache->activations.push_back(a);
            cache->cos_z.push_back(std::move(cz));
        }
    }

    // Linear head.
    const DenseMatrix& wh = p.w[layers - 1];
    std::vector<double> pred(n);
    for (std::size_t i = 0; i < n; ++i) {
        double z = p.b[layers - 1][0];
        const double* ai = a.data.data() + i * wh.rows;
        for (std::size_t k = 0; k < wh.rows; ++k) z += ai[k] * wh(k, 0);
        pred[i] = z;
    }
    return pred;
}

SirenParams siren_vjp(const SirenParams& p, const SirenCache& cache,
                      const std::vector<double>& d_pred) {
    const std::size_t layers = p.w.size();
    const std::size_t n = d_pred.size();
    if (cache.activations.size() != layers)
        throw DimensionMismatch("siren_vjp: cache does not match forward");

    SirenParams g;
    g.omega0 = p.omega0;
    g.w.resize(layers);
    g.b.resize(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        g.w[l] = DenseMatrix(p.w[l].rows, p.w[l].cols);
        g.b[l].assign(p.b[l].size(), 0.0);
    }

    // Head: pred = a W + b.
    const DenseMatrix& a_last = cache.activations[layers - 1];
    std::vector<double> d_a(a_last.data.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double gi = d_pred[i];
        g.b[layers - 1][0] += gi;
        const double* ai = a_last.data.data() + i * a_last.cols;
        double* dai = d_a.data() + i * a_last.cols;
        for (std::size_t k = 0; k < a_last.cols; ++k) {
            g.w[layers - 1](k, 0) += ai[k] * gi;
            dai[k] = gi * p.w[layers - 1](k, 0);
        }
    }

    // Sine layers, last to first: a_out = sin(omega0 (a_in W + b)).
    for (std::size_t l = layers - 1; l-- > 0;) {
        const DenseMatrix& a_in = cache.activations[l];
        const DenseMatrix& cz = cache.cos_z[l];
        const DenseMatrix& w = p.w[l];
        std::vector<double> d_a_in(a_in.data.size(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double* ai = a_in.data.data() + i * w.rows;
            const double* czi = cz.data.data() + i * w.cols;
            const double* dout = d_a.data() + i * w.cols;
            double* din = d_a_in.data() + i * w.rows;
            for (std::size_t j = 0; j < w.cols; ++j) {
                const double dz = dout[j] * p.omega0 * czi[j];
                g.b[l][j] += dz;
                for (std::size_t k = 0; k < w.rows; ++k) {
                    g.w[l](k, j) += ai[k] * dz;
                    din[k] += dz * w(k, j);
                }
            }
        }
        d_a = std::move(d_a_in);
    }
    return g;
}

std::vector<double> siren_pack(const SirenParams& p) {
    std::vector<double> flat;
    for (std::size_t l = 0; l < p.w.size(); ++l) {
        flat.insert(flat.end(), p.w[l].data.begin(), p.w[l].data.end());
        flat.insert(flat.end(), p.b[l].begin(), p.b[l].end());
    }
    return flat;
}

void siren_unpack(const std::vector<double>& flat, SirenParams& p) {
    std::size_t pos = 0;
    for (std::size_t l = 0; l < p.w.size(); ++l) {
        for (double& v : p.w[l].data) v = flat[pos++];
        for (double& v : p.b[l]) v = flat[pos++];
    }
    if (pos != flat.size())
        throw DimensionMismatch("siren_unpack: length mismatch");
}

// ---------------------------------------------------------------------------
// GridMLP
// ---------------------------------------------------------------------------

namespace {

std::size_t corners_per_cell(std::size_t d) { return d == 1 ? 2u : 4u; }

// Maps a coordinate in [-1, 1] to (node index, fractional offset), clamping
// queries that fall outside the grid.
void locate(double x, std::size_t res, std::size_t& i0, double& t) {
    double gpos = (x + 1.0) * 0.5 * static_cast<double>(res - 1);
    if (gpos < 0.0) gpos = 0.0;
    const double gmax = static_cast<double>(res - 1);
    if (gpos > gmax) gpos = gmax;
    double fl = std::floor(gpos);
    if (fl > gmax - 1.0) fl = gmax - 1.0;
    i0 = static_cast<std::size_t>(fl);
    t = gpos - fl;
}

} // namespace

GridMlpParams gridmlp_init(std::uint64_t seed, std::size_t d, std::size_t res,
                           std::size_t feat, std::size_t width) {
    if (d != 1 && d != 2) throw UnsupportedDimension(d);
    if (res < 2)
        throw std::invalid_argument("gridmlp_init: res must be >= 2");

    GridMlpParams p;
    p.d = d;
    p.res = res;
    p.feat = feat;
    const std::size_t nodes = d == 1 ? res : res * res;
    p.grid.resize(nodes * feat);
    {
        Rng rng(derive_seed(seed, streams::kGridFeatures));
        for (double& v : p.grid) v = rng.uniform(-1e-4, 1e-4);
    }
    {
        Rng rng(derive_seed(seed, streams::kGridHead));
        p.w1 = DenseMatrix(feat, width);
        const double bound1 =
            std::sqrt(6.0 / static_cast<double>(feat + width));
        for (double& v : p.w1.data) v = rng.uniform(-bound1, bound1);
        p.b1.assign(width, 0.0);
        p.w2 = DenseMatrix(width, 1);
        const double bound2 = std::sqrt(6.0 / static_cast<double>(width + 1));
        for (double& v : p.w2.data) v = rng.uniform(-bound2, bound2);
        p.b2 = 0.0;
    }
    return p;
}

std::vector<double> gridmlp_features(const GridMlpParams& p,
                                     const double* coord) {
    std::vector<double> f(p.feat, 0.0);
    if (p.d == 1) {
        std::size_t i0;
        double t;
        locate(coord[0], p.res, i0, t);
        const double* f0 = p.grid.data() + i0 * p.feat;
        const double* f1 = p.grid.data() + (i0 + 1) * p.feat;
        for (std::size_t c = 0; c < p.feat; ++c)
            f[c] = (1.0 - t) * f0[c] + t * f1[c];
    } else {
        std::size_t ix, iy;
        double tx, ty;
        locate(coord[0], p.res, ix, tx);
        locate(coord[1], p.res, iy, ty);
        const std::size_t n00 = iy * p.res + ix;
        const std::size_t n01 = n00 + 1;
        const std::size_t n10 = n00 + p.res;
        const std::size_t n11 = n10 + 1;
        const double w00 = (1.0 - tx) * (1.0 - ty);
        const double w01 = tx * (1.0 - ty);
        const double w10 = (1.0 - tx) * ty;
        const double w11 = tx * ty;
        for (std::size_t c = 0; c < p.feat; ++c)
            f[c] = w00 * p.grid[n00 * p.feat + c] +
                   w01 * p.grid[n01 * p.feat + c] +
                   w10 * p.grid[n10 * p.feat + c] +
                   w11 * p.grid[n11 * p.feat + c];
    }
    return f;
}

std::vector<double> gridmlp_forward(const GridMlpParams& p,
                                    const DenseMatrix& x, GridMlpCache* cache) {
    const std::size_t n = x.rows;
    if (x.cols != p.d)
        throw DimensionMismatch("gridmlp_forward: x cols != grid d");
    const std::size_t nc = corners_per_cell(p.d);
    const std::size_t width = p.w1.cols;

    if (cache != nullptr) {
        cache->corners.assign(n * nc, 0);
        cache->weights.assign(n * nc, 0.0);
        cache->features = DenseMatrix(n, p.feat);
        cache->hidden = DenseMatrix(n, width);
    }

    std::vector<double> pred(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* coord = x.data.data() + i * p.d;
        std::size_t corner_ids[4] = {0, 0, 0, 0};
        double corner_w[4] = {0, 0, 0, 0};
        if (p.d == 1) {
            std::size_t i0;
            double t;
            locate(coord[0], p.res, i0, t);
            corner_ids[0] = i0;
            corner_ids[1] = i0 + 1;
            corner_w[0] = 1.0 - t;
            corner_w[1] = t;
        } else {
            std::size_t ix, iy;
            double tx, ty;
            locate(coord[0], p.res, ix, tx);
            locate(coord[1], p.res, iy, ty);
            const std::size_t n00 = iy * p.res + ix;
            corner_ids[0] = n00;
            corner_ids[1] = n00 + 1;
            corner_ids[2] = n00 + p.res;
            corner_ids[3] = n00 + p.res + 1;
            corner_w[0] = (1.0 - tx) * (1.0 - ty);
            corner_w[1] = tx * (1.0 - ty);
            corner_w[2] = (1.0 - tx) * ty;
            corner_w[3] = tx * ty;
        }

        std::vector<double> f(p.feat, 0.0);
        for (std::size_t q = 0; q < nc; ++q) {
            const double* node = p.grid.data() + corner_ids[q] * p.feat;
            for (std::size_t c = 0; c < p.feat; ++c)
                f[c] += corner_w[q] * node[c];
        }

        double out = p.b2;
        std::vector<double> h(width);
        for (std::size_t j = 0; j < width; ++j) {
            double z = p.b1[j];
            for (std::size_t c = 0; c < p.feat; ++c) z += f[c] * p.w1(c, j);
            h[j] = std::tanh(z);
            out += h[j] * p.w2(j, 0);
        }
        pred[i] = out;

        if (cache != nullptr) {
            for (std::size_t q = 0; q < nc; ++q) {
                cache->corners[i * nc + q] = corner_ids[q];
                cache->weights[i * nc + q] = corner_w[q];
            }
            for (std::size_t c = 0; c < p.feat; ++c)
                cache->features(i, c) = f[c];
            for (std::size_t j = 0; j < width; ++j) cache->hidden(i, j) = h[j];
        }
    }
    return pred;
}

GridMlpParams gridmlp_vjp(const GridMlpParams& p, const GridMlpCache& cache,
                          const std::vector<double>& d_pred) {
    const std::size_t n = d_pred.size();
    const std::size_t nc = corners_per_cell(p.d);
    const std::size_t width = p.w1.cols;

    GridMlpParams g;
    g.d = p.d;
    g.res = p.res;
    g.feat = p.feat;
    g.grid.assign(p.grid.size(), 0.0);
    g.w1 = DenseMatrix(p.feat, width);
    g.b1.assign(width, 0.0);
    g.w2 = DenseMatrix(width, 1);
    g.b2 = 0.0;

    for (std::size_t i = 0; i < n; ++i) {
        const double gi = d_pred[i];
        g.b2 += gi;
        std::vector<double> d_f(p.feat, 0.0);
        for (std::size_t j = 0; j < width; ++j) {
            const double h = cache.hidden(i, j);
            g.w2(j, 0) += h * gi;
            const double dz = gi * p.w2(j, 0) * (1.0 - h * h); // tanh'
            g.b1[j] += dz;
            for (std::size_t c = 0; c < p.feat; ++c) {
                g.w1(c, j) += cache.features(i, c) * dz;
                d_f[c] += dz * p.w1(c, j);
            }
        }
        // Scatter the feature gradient back to the cell corners.
        for (std::size_t q = 0; q < nc; ++q) {
            const std::size_t node = cache.corners[i * nc + q];
            const double w = cache.weights[i * nc + q];
            double* gnode = g.grid.data() + node * p.feat;
            for (std::size_t c = 0; c < p.feat; ++c) gnode[c] += w * d_f[c];
        }
    }
    return g;
}

std::vector<double> gridmlp_pack(const GridMlpParams& p) {
    std::vector<double> flat;
    flat.insert(flat.end(), p.grid.begin(), p.grid.end());
    flat.insert(flat.end(), p.w1.data.begin(), p.w1.data.end());
    flat.insert(flat.end(), p.b1.begin(), p.b1.end());
    flat.insert(flat.end(), p.w2.data.begin(), p.w2.data.end());
    flat.push_back(p.b2);
    return flat;
}

void gridmlp_unpack(const std::vector<double>& flat, GridMlpParams& p) {
    std::size_t pos = 0;
    for (double& v : p.grid) v = flat[pos++];
    for (double& v : p.w1.data) v = flat[pos++];
    for (double& v : p.b1) v = flat[pos++];
    for (double& v : p.w2.data) v = flat[pos++];
    p.b2 = flat[pos++];
    if (pos != flat.size())
        throw DimensionMismatch("gridmlp_unpack: length mismatch");
}

} // namespace vekua
