#include "vekua/checkpoint.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "vekua/csv.hpp"

namespace vekua {

DenseMatrix AffineNorm::apply(const DenseMatrix& x) const {
    if (x.cols != center.size())
        throw DimensionMismatch("normalization: coordinate dim mismatch");
    DenseMatrix out(x.rows, x.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t a = 0; a < x.cols; ++a)
            out(i, a) = (x(i, a) - center[a]) / halfwidth[a];
    return out;
}

AffineNorm fit_normalization(const DenseMatrix& x) {
    if (x.rows == 0) throw DimensionMismatch("normalization: empty data");
    AffineNorm n;
    n.center.resize(x.cols);
    n.halfwidth.resize(x.cols);
    for (std::size_t a = 0; a < x.cols; ++a) {
        double lo = x(0, a), hi = x(0, a);
        for (std::size_t i = 1; i < x.rows; ++i) {
            lo = std::min(lo, x(i, a));
            hi = std::max(hi, x(i, a));
        }
        n.center[a] = 0.5 * (lo + hi);
        const double hw = 0.5 * (hi - lo);
        n.halfwidth[a] = hw > 0.0 ? hw : 1.0;
    }
    return n;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

void emit_vector(std::ostringstream& out, const std::string& key,
                 const std::vector<double>& v) {
    out << key << " " << v.size();
    for (double x : v) out << " " << format_double(x);
    out << "\n";
}

void emit_matrix(std::ostringstream& out, const std::string& key,
                 const DenseMatrix& m) {
    out << key << " " << m.rows << " " << m.cols << "\n";
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j > 0) out << " ";
            out << format_double(m(i, j));
        }
        out << "\n";
    }
}

// Whitespace-token reader with strict expected-keyword parsing; the format
// has a fixed key order so anything unexpected is a hard error.
class TokenReader {
public:
    explicit TokenReader(const std::string& text) : in_(text) {}

    std::string next() {
        std::string tok;
        if (!(in_ >> tok)) throw std::runtime_error("checkpoint: truncated");
        return tok;
    }

    void expect(const std::string& keyword) {
        const std::string tok = next();
        if (tok != keyword)
            throw std::runtime_error("checkpoint: expected '" + keyword +
                                     "', found '" + tok + "'");
    }

    double number() {
        const std::string tok = next();
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw std::runtime_error("checkpoint: bad number '" + tok + "'");
        return v;
    }

    std::uint64_t integer() {
        const std::string tok = next();
        char* end = nullptr;
        const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
        if (end == tok.c_str() || *end != '\0')
            throw std::runtime_error("checkpoint: bad integer '" + tok + "'");
        return v;
    }

    std::vector<double> vector(const std::string& key) {
        expect(key);
        const std::size_t n = static_cast<std::size_t>(integer());
        std::vector<double> v(n);
        for (double& x : v) x = number();
        return v;
    }

    DenseMatrix matrix(const std::string& key) {
        expect(key);
        const std::size_t r = static_cast<std::size_t>(integer());
        const std::size_t c = static_cast<std::size_t>(integer());
        DenseMatrix m(r, c);
        for (double& x : m.data) x = number();
        return m;
    }

    bool at_end() {
        std::string tok;
        return !(in_ >> tok);
    }

private:
    std::istringstream in_;
};

} // namespace

std::string checkpoint_to_text(const Checkpoint& c) {
    std::ostringstream out;
    out << "deepvekua_checkpoint " << c.format_version << "\n";
    const TrainConfig& cfg = c.config;
    out << "method " << method_to_string(cfg.method) << "\n";
    out << "benchmark " << cfg.benchmark << "\n";
    out << "seed " << cfg.seed << "\n";
    out << "iters " << cfg.iters << "\n";
    out << "lr " << format_double(cfg.lr) << "\n";
    out << "lambda " << format_double(cfg.lambda) << "\n";
    out << "blocks " << cfg.blocks << "\n";
    out << "freqs " << cfg.freqs << "\n";
    out << "hidden " << cfg.hidden << "\n";
    out << "n_train " << cfg.n_train << "\n";
    out << "noise_sigma " << format_double(cfg.noise_sigma) << "\n";
    out << "freeze_freqs " << (cfg.freeze_freqs ? 1 : 0) << "\n";
    emit_vector(out, "norm_center", c.norm.center);
    emit_vector(out, "norm_halfwidth", c.norm.halfwidth);

    switch (cfg.method) {
        case Method::kDeepVekua:
        case Method::kCascade: {
            const ModelParams& m = c.model;
            for (std::size_t l = 0; l < m.blocks.size(); ++l) {
                const BlockParams& blk = m.blocks[l];
                out << "block " << l << "\n";
                emit_matrix(out, "warp_w_in", blk.warp.w_in);
                emit_vector(out, "warp_b", blk.warp.b);
                emit_matrix(out, "warp_w_out", blk.warp.w_out);
                emit_vector(out, "freqs_re", blk.freqs.re);
                emit_vector(out, "freqs_im", blk.freqs.im);
                emit_vector(out, "solved_w", c.solved.w[l]);
                out << "solved_lambda "
                    << format_double(c.solved.lambda_used[l]) << "\n";
            }
            break;
        }
        case Method::kSiren: {
            out << "siren_layers " << c.siren.w.size() << "\n";
            out << "omega0 " << format_double(c.siren.omega0) << "\n";
            for (std::size_t l = 0; l < c.siren.w.size(); ++l) {
                out << "layer " << l << "\n";
                emit_matrix(out, "w", c.siren.w[l]);
                emit_vector(out, "b", c.siren.b[l]);
            }
            break;
        }
        case Method::kGridMlp: {
            const GridMlpParams& p = c.gridmlp;
            out << "grid_dims " << p.d << " " << p.res << " " << p.feat
                << "\n";
            emit_vector(out, "grid", p.grid);
            emit_matrix(out, "head_w1", p.w1);
            emit_vector(out, "head_b1", p.b1);
            emit_matrix(out, "head_w2", p.w2);
            out << "head_b2 " << format_double(p.b2) << "\n";
            break;
        }
    }
    return out.str();
}

Checkpoint checkpoint_from_text(const std::string& text) {
    TokenReader rd(text);
    Checkpoint c;
    rd.expect("deepvekua_checkpoint");
    c.format_version = static_cast<int>(rd.integer());
    if (c.format_version != 1)
        throw std::runtime_error("checkpoint: unsupported format version " +
                                 std::to_string(c.format_version));
    TrainConfig& cfg = c.config;
    rd.expect("method");
    cfg.method = method_from_string(rd.next());
    rd.expect("benchmark");
    cfg.benchmark = rd.next();
    rd.expect("seed");
    cfg.seed = rd.integer();
    rd.expect("iters");
    cfg.iters = static_cast<std::size_t>(rd.integer());
    rd.expect("lr");
    cfg.lr = rd.number();
    rd.expect("lambda");
    cfg.lambda = rd.number();
    rd.expect("blocks");
    cfg.blocks = static_cast<std::size_t>(rd.integer());
    rd.expect("freqs");
    cfg.freqs = static_cast<std::size_t>(rd.integer());
    rd.expect("hidden");
    cfg.hidden = static_cast<std::size_t>(rd.integer());
    rd.expect("n_train");
    cfg.n_train = static_cast<std::size_t>(rd.integer());
    rd.expect("noise_sigma");
    cfg.noise_sigma = rd.number();
    rd.expect("freeze_freqs");
    cfg.freeze_freqs = rd.integer() != 0;
    c.norm.center = rd.vector("norm_center");
    c.norm.halfwidth = rd.vector("norm_halfwidth");
    const std::size_t d = c.norm.center.size();

    switch (cfg.method) {
        case Method::kDeepVekua:
        case Method::kCascade: {
            ModelParams& m = c.model;
            m.d = d;
            m.lambda = cfg.lambda;
            m.use_warp = cfg.method == Method::kDeepVekua;
            m.learn_freqs = !cfg.freeze_freqs;
            m.blocks.resize(cfg.blocks);
            c.solved.w.resize(cfg.blocks);
            c.solved.lambda_used.resize(cfg.blocks);
            for (std::size_t l = 0; l < cfg.blocks; ++l) {
                rd.expect("block");
                if (rd.integer() != l)
                    throw std::runtime_error("checkpoint: block order broken");
                BlockParams& blk = m.blocks[l];
                blk.warp.w_in = rd.matrix("warp_w_in");
                blk.warp.b = rd.vector("warp_b");
                blk.warp.w_out = rd.matrix("warp_w_out");
                blk.freqs.re = rd.vector("freqs_re");
                blk.freqs.im = rd.vector("freqs_im");
                c.solved.w[l] = rd.vector("solved_w");
                rd.expect("solved_lambda");
                c.solved.lambda_used[l] = rd.number();
            }
            break;
        }
        case Method::kSiren: {
            rd.expect("siren_layers");
            const std::size_t layers = static_cast<std::size_t>(rd.integer());
            rd.expect("omega0");
            c.siren.omega0 = rd.number();
            c.siren.w.resize(layers);
            c.siren.b.resize(layers);
            for (std::size_t l = 0; l < layers; ++l) {
                rd.expect("layer");
                if (rd.integer() != l)
                    throw std::runtime_error("checkpoint: layer order broken");
                c.siren.w[l] = rd.matrix("w");
                c.siren.b[l] = rd.vector("b");
            }
            break;
        }
        case Method::kGridMlp: {
            GridMlpParams& p = c.gridmlp;
            rd.expect("grid_dims");
            p.d = static_cast<std::size_t>(rd.integer());
            p.res = static_cast<std::size_t>(rd.integer());
            p.feat = static_cast<std::size_t>(rd.integer());
            p.grid = rd.vector("grid");
            p.w1 = rd.matrix("head_w1");
            p.b1 = rd.vector("head_b1");
            p.w2 = rd.matrix("head_w2");
            rd.expect("head_b2");
            p.b2 = rd.number();
            break;
        }
    }
    if (!rd.at_end())
        throw std::runtime_error("checkpoint: trailing content");
    return c;
}

void save_checkpoint(const std::string& path, const Checkpoint& c) {
    write_text_file(path, checkpoint_to_text(c));
}

Checkpoint load_checkpoint(const std::string& path) {
    return checkpoint_from_text(read_text_file(path));
}

std::vector<double> checkpoint_predict(const Checkpoint& c,
                                       const DenseMatrix& x_raw) {
    const DenseMatrix xn = c.norm.apply(x_raw);
    switch (c.config.method) {
        case Method::kDeepVekua:
        case Method::kCascade:
            return predict(c.model, c.solved, xn);
        case Method::kSiren:
            return siren_forward(c.siren, xn);
        case Method::kGridMlp:
            return gridmlp_forward(c.gridmlp, xn);
    }
    throw std::logic_error("bad method enum");
}

} // namespace vekua
