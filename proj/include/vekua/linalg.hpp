#pragma once

// ---------------------------------------------------------------------------
// Differentiable ridge least squares.
//
// Forward:   w = (Psi^T Psi + lambda I)^{-1} Psi^T r
// solved via an unblocked Cholesky factorization of the Gram matrix. When
// the factorization hits a non-positive pivot (warped coordinates can
// collapse Psi to numerical rank deficiency) the regularizer escalates
// tenfold, up to six times, and the lambda actually used is reported.
//
// Backward:  with u = (Psi^T Psi + lambda I)^{-1} g,
//     d_r   = Psi u
//     d_Psi = (r - Psi w) u^T - (Psi u) w^T
// which is the exact vector-Jacobian product of the closed-form solution.
// ---------------------------------------------------------------------------

#include <utility>
#include <vector>

#include "vekua/dense.hpp"

namespace vekua {

struct CholeskyFactor {
    std::size_t dim = 0;
    DenseMatrix lower; // lower triangle of L, upper triangle zero

    // Solves (L L^T) x = b by forward/back substitution.
    std::vector<double> solve(const std::vector<double>& b) const;
};

struct RidgeSolution {
    std::vector<double> weights;
    double lambda_used = 0.0;
    // Factor of Psi^T Psi + lambda_used I, retained so the backward pass can
    // reuse it instead of refactoring.
    CholeskyFactor chol;
};

struct RidgeVjp {
    DenseMatrix d_psi;
    std::vector<double> d_r;
};

// Factors a symmetric positive definite matrix as L L^T.
// Throws NotPositiveDefinite (with the offending pivot index) otherwise.
CholeskyFactor cholesky(const DenseMatrix& a);

// Minimizes ||Psi w - r||^2 + lambda ||w||^2. lambda must be > 0.
// Throws SolveFailed when even the escalated regularizer cannot produce a
// positive definite Gram matrix.
RidgeSolution ridge_solve(const DenseMatrix& psi, const std::vector<double>& r,
                          double lambda);

// VJP of ridge_solve with respect to (psi, r), given the solution w and the
// upstream gradient g = dL/dw. lambda must be the lambda actually used by the
// forward solve. If `factor` is non-null it is reused; otherwise the Gram
// matrix is refactored.
RidgeVjp ridge_solve_vjp(const DenseMatrix& psi, const std::vector<double>& r,
                         double lambda, const std::vector<double>& w,
                         const std::vector<double>& g,
                         const CholeskyFactor* factor = nullptr);

} // namespace vekua
