#pragma once

// Adam over a flat parameter vector, plus the central-difference gradient
// checker every other module's tests lean on.

#include <cstddef>
#include <functional>
#include <vector>

#include "vekua/errors.hpp"

namespace vekua {

struct AdamState {
    std::vector<double> m, v;
    std::size_t t = 0;
    double lr = 2e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    explicit AdamState(std::size_t n, double learning_rate = 2e-3)
        : m(n, 0.0), v(n, 0.0), lr(learning_rate) {}
};

// Standard bias-corrected update; params are modified in place.
void adam_step(AdamState& state, std::vector<double>& params,
               const std::vector<double>& grads);

struct GradCheckReport {
    bool passed = false;
    double max_rel_error = 0.0;       // over coordinates with |analytic| > 1e-8
    std::size_t worst_coordinate = 0;
    double worst_analytic = 0.0;
    double worst_numeric = 0.0;
    std::size_t checked = 0; // coordinates above the magnitude floor
};

// Central differences (f(p + h e_i) - f(p - h e_i)) / 2h against the supplied
// analytic gradient. The step is scaled per coordinate by max(1, |p_i|).
// Relative error is measured against the numeric value: a gradient scaled by
// 2x reports an error near 1.
GradCheckReport grad_check(
    const std::function<double(const std::vector<double>&)>& loss_fn,
    const std::vector<double>& params, const std::vector<double>& analytic,
    double step, double tol);

} // namespace vekua
