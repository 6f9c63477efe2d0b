#include "vekua/dense.hpp"

#include <cmath>

namespace vekua {

std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& x) {
    if (x.size() != a.cols)
        throw DimensionMismatch("matvec: vector length != matrix cols");
    std::vector<double> y(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* row = a.data.data() + i * a.cols;
        double acc = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

std::vector<double> matvec_t(const DenseMatrix& a, const std::vector<double>& x) {
    if (x.size() != a.rows)
        throw DimensionMismatch("matvec_t: vector length != matrix rows");
    std::vector<double> y(a.cols, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* row = a.data.data() + i * a.cols;
        const double xi = x[i];
        for (std::size_t j = 0; j < a.cols; ++j) y[j] += row[j] * xi;
    }
    return y;
}

DenseMatrix gram(const DenseMatrix& a) {
    DenseMatrix g(a.cols, a.cols);
    for (std::size_t n = 0; n < a.rows; ++n) {
        const double* row = a.data.data() + n * a.cols;
        for (std::size_t i = 0; i < a.cols; ++i) {
            const double ri = row[i];
            if (ri == 0.0) continue;
            double* gi = g.data.data() + i * a.cols;
            for (std::size_t j = i; j < a.cols; ++j) gi[j] += ri * row[j];
        }
    }
    // Mirror the upper triangle.
    for (std::size_t i = 0; i < a.cols; ++i)
        for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
    return g;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows)
        throw DimensionMismatch("matmul: inner dimensions differ");
    DenseMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* arow = a.data.data() + i * a.cols;
        double* crow = c.data.data() + i * b.cols;
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = arow[k];
            if (aik == 0.0) continue;
            const double* brow = b.data.data() + k * b.cols;
            for (std::size_t j = 0; j < b.cols; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: lengths differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

double frobenius_norm(const DenseMatrix& a) {
    double acc = 0.0;
    for (double v : a.data) acc += v * v;
    return std::sqrt(acc);
}

bool all_finite(const DenseMatrix& a) { return all_finite(a.data); }

bool all_finite(const std::vector<double>& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace vekua
