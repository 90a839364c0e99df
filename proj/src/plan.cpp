#include "spinspec/plan.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinspec/numerics.hpp"

namespace spinspec {

double ErrorBudget::xi() const { return -std::expm1(-gamma * n); }

void validate_budget(const ErrorBudget& b) {
    if (b.n < 1) throw std::invalid_argument("budget.n: need n >= 1");
    if (!(b.beta > 0.0)) throw std::invalid_argument("budget.beta: need > 0");
    if (!(b.gamma > 0.0)) throw std::invalid_argument("budget.gamma: need > 0");
    if (!(b.epsilon > 0.0 && b.epsilon < 1.0))
        throw std::invalid_argument("budget.epsilon: need 0 < epsilon < 1");
    if (!(b.xi() > 0.0))
        throw std::invalid_argument("budget: xi underflowed to 0 (gamma*n too small)");
}

double planner_mu() { return 1.0 / (2.0 * std::log(M_PI) - 1.0); }

double planner_kappa() {
    return 2.5 + std::log(2.0 * lemma_constant_c() / std::sqrt(6.0)) /
                     std::log(M_PI);
}

double planner_kappa_prime() {
    return planner_mu() * planner_kappa() * std::log(M_PI);
}

SamplingPlan plan_deterministic(const ErrorBudget& budget, double delta_E,
                                bool force_large_N) {
    validate_budget(budget);
    if (!(delta_E > 0.0))
        throw std::invalid_argument("plan: delta_E must be positive");
    const double xi = budget.xi();
    SamplingPlan p;
    p.delta_E = delta_E;
    p.dt = 2.0 * M_PI / delta_E;
    p.delta_e = std::log1p(0.5 * xi) / budget.beta;
    p.T0 = 2.0 * M_PI / p.delta_e;
    const double half_theta = planner_mu() * budget.beta * delta_E +
                              planner_mu() * std::log(1.0 / xi) +
                              planner_kappa_prime();
    p.theta = 2 * static_cast<int>(std::ceil(half_theta));
    const double n_raw = p.theta * delta_E / p.delta_e;
    p.N = 2 * static_cast<std::int64_t>(std::ceil(0.5 * n_raw));
    if (p.N > kMaxSamples && !force_large_N)
        throw std::runtime_error(
            "plan: N = " + std::to_string(p.N) +
            " exceeds the sample guard (pass force_large_N to override)");
    p.window = window_time_samples({p.theta, p.T0}, p.dt);
    // The window support in samples is exactly N/2 when N comes from the
    // even ceiling above; anything else is a rounding inconsistency.
    if (static_cast<std::int64_t>(p.window.weights.size()) != p.N / 2 + 1)
        throw std::logic_error("plan: window length does not match N/2 + 1");
    return p;
}

ScalingStudy scaling_study(const ErrorBudget& budget_template,
                           const std::vector<int>& n_values,
                           const std::function<double(int)>& delta_E_rule) {
    ScalingStudy study;
    std::vector<double> log_n, log_N;
    for (int n : n_values) {
        ErrorBudget b = budget_template;
        b.n = n;
        SamplingPlan p = plan_deterministic(b, delta_E_rule(n));
        study.rows.push_back({n, p.delta_E, p.delta_e, p.theta, p.N});
        log_n.push_back(std::log(static_cast<double>(n)));
        log_N.push_back(std::log(static_cast<double>(p.N)));
    }
    if (log_n.size() >= 2)
        study.fitted_exponent =
            fit_line(log_n.data(), log_N.data(), log_n.size()).slope;
    return study;
}

}  // namespace spinspec
