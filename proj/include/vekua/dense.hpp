#pragma once

// Dense row-major matrix of 64-bit floats plus the handful of BLAS-1/2/3
// style helpers the solver needs. Sizes here are desk-scale (a few hundred
// rows, at most a few hundred columns), so everything is plain loops.

#include <cstddef>
#include <vector>

#include "vekua/errors.hpp"

namespace vekua {

struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data; // row-major, data.size() == rows * cols

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) {
        return data[i * cols + j];
    }
    double operator()(std::size_t i, std::size_t j) const {
        return data[i * cols + j];
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

// y = A x
std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& x);

// y = A^T x
std::vector<double> matvec_t(const DenseMatrix& a, const std::vector<double>& x);

// A^T A (symmetric, computed once per solve)
DenseMatrix gram(const DenseMatrix& a);

// C = A B
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);
double norm_inf(const std::vector<double>& a);
double frobenius_norm(const DenseMatrix& a);

// True iff every entry is finite.
bool all_finite(const DenseMatrix& a);
bool all_finite(const std::vector<double>& a);

} // namespace vekua
