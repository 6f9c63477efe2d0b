#include "vekua/optim.hpp"

#include <cmath>

namespace vekua {

void adam_step(AdamState& state, std::vector<double>& params,
               const std::vector<double>& grads) {
    const std::size_t n = params.size();
    if (state.m.size() != n || grads.size() != n)
        throw DimensionMismatch("adam_step: state/params/grads lengths differ");

    state.t += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < n; ++i) {
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grads[i];
        state.v[i] =
            state.beta2 * state.v[i] + (1.0 - state.beta2) * grads[i] * grads[i];
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        params[i] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
}

GradCheckReport grad_check(
    const std::function<double(const std::vector<double>&)>& loss_fn,
    const std::vector<double>& params, const std::vector<double>& analytic,
    double step, double tol) {
    if (analytic.size() != params.size())
        throw DimensionMismatch("grad_check: gradient length != params length");
    if (!(step > 0.0))
        throw std::invalid_argument("grad_check: step must be > 0");

    GradCheckReport report;
    std::vector<double> p = params;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (std::abs(analytic[i]) <= 1e-8) continue;
        const double h = step * std::max(1.0, std::abs(p[i]));
        const double saved = p[i];
        p[i] = saved + h;
        const double fp = loss_fn(p);
        p[i] = saved - h;
        const double fm = loss_fn(p);
        p[i] = saved;
        const double numeric = (fp - fm) / (2.0 * h);
        const double rel =
            std::abs(analytic[i] - numeric) / std::max(std::abs(numeric), 1e-12);
        report.checked += 1;
        if (rel > report.max_rel_error) {
            report.max_rel_error = rel;
            report.worst_coordinate = i;
            report.worst_analytic = analytic[i];
            report.worst_numeric = numeric;
        }
    }
    report.passed = report.max_rel_error < tol;
    return report;
}

} // namespace vekua
