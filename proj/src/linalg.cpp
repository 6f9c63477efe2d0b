#include "vekua/linalg.hpp"

#include <cmath>
#include <string>

namespace vekua {

namespace {

constexpr int kMaxJitterEscalations = 6;

void check_symmetric(const DenseMatrix& a) {
    if (a.rows != a.cols)
        throw DimensionMismatch("cholesky: matrix not square");
    double scale = 0.0;
    for (double v : a.data) scale = std::max(scale, std::abs(v));
    const double tol = 1e-12 * std::max(1.0, scale);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = i + 1; j < a.cols; ++j)
            if (std::abs(a(i, j) - a(j, i)) > tol)
                throw std::invalid_argument(
                    "cholesky: matrix not symmetric at (" + std::to_string(i) +
                    "," + std::to_string(j) + ")");
}

} // namespace

std::vector<double> CholeskyFactor::solve(const std::vector<double>& b) const {
    if (b.size() != dim)
        throw DimensionMismatch("cholesky solve: rhs length != dim");
    const std::size_t n = dim;
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = b[i];
        const double* li = lower.data.data() + i * n;
        for (std::size_t j = 0; j < i; ++j) acc -= li[j] * y[j];
        y[i] = acc / li[i];
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= lower(j, ii) * x[j];
        x[ii] = acc / lower(ii, ii);
    }
    return x;
}

CholeskyFactor cholesky(const DenseMatrix& a) {
    check_symmetric(a);
    if (!all_finite(a))
        throw std::invalid_argument("cholesky: non-finite entry");

    const std::size_t n = a.rows;
    CholeskyFactor f;
    f.dim = n;
    f.lower = DenseMatrix(n, n);
    DenseMatrix& l = f.lower;

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double acc = a(i, j);
            const double* li = l.data.data() + i * n;
            const double* lj = l.data.data() + j * n;
            for (std::size_t k = 0; k < j; ++k) acc -= li[k] * lj[k];
            if (i == j) {
                if (acc <= 0.0) throw NotPositiveDefinite(j);
                l(i, j) = std::sqrt(acc);
            } else {
                l(i, j) = acc / l(j, j);
            }
        }
    }
    return f;
}

RidgeSolution ridge_solve(const DenseMatrix& psi, const std::vector<double>& r,
                          double lambda) {
    if (psi.rows == 0 || psi.cols == 0)
        throw DimensionMismatch("ridge_solve: empty design matrix");
    if (r.size() != psi.rows)
        throw DimensionMismatch("ridge_solve: rhs length != rows");
    if (!(lambda > 0.0))
        throw std::invalid_argument("ridge_solve: lambda must be > 0");
    if (!all_finite(psi) || !all_finite(r))
        throw std::invalid_argument("ridge_solve: non-finite input");

    DenseMatrix g = gram(psi);

    RidgeSolution sol;
    double lam = lambda;
    for (int attempt = 0;; ++attempt) {
        DenseMatrix reg = g;
        for (std::size_t i = 0; i < reg.rows; ++i) reg(i, i) += lam;
        try {
            sol.chol = cholesky(reg);
            break;
        } catch (const NotPositiveDefinite&) {
            if (attempt == kMaxJitterEscalations)
                throw SolveFailed("Gram matrix not positive definite after " +
                                  std::to_string(kMaxJitterEscalations) +
                                  " jitter escalations (final lambda " +
                                  std::to_string(lam) + ")");
            lam *= 10.0;
        }
    }
    sol.lambda_used = lam;
    sol.weights = sol.chol.solve(matvec_t(psi, r));
    return sol;
}

RidgeVjp ridge_solve_vjp(const DenseMatrix& psi, const std::vector<double>& r,
                         double lambda, const std::vector<double>& w,
                         const std::vector<double>& g,
                         const CholeskyFactor* factor) {
    if (r.size() != psi.rows)
        throw DimensionMismatch("ridge_solve_vjp: rhs length != rows");
    if (w.size() != psi.cols || g.size() != psi.cols)
        throw DimensionMismatch("ridge_solve_vjp: w/g length != cols");

    CholeskyFactor local;
    if (factor == nullptr) {
        DenseMatrix reg = gram(psi);
        for (std::size_t i = 0; i < reg.rows; ++i) reg(i, i) += lambda;
        local = cholesky(reg);
        factor = &local;
    }

    const std::vector<double> u = factor->solve(g);
    const std::vector<double> psi_u = matvec(psi, u); // also d_r
    const std::vector<double> psi_w = matvec(psi, w);

    RidgeVjp out;
    out.d_r = psi_u;
    out.d_psi = DenseMatrix(psi.rows, psi.cols);
    for (std::size_t n = 0; n < psi.rows; ++n) {
        const double resid = r[n] - psi_w[n];
        const double pu = psi_u[n];
        double* row = out.d_psi.data.data() + n * psi.cols;
        for (std::size_t j = 0; j < psi.cols; ++j)
            row[j] = resid * u[j] - pu * w[j];
    }
    return out;
}

} // namespace vekua
