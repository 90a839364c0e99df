// Deterministic error-budget planner: from (n, beta, gamma) and a bandwidth,
// derive the sampling resolution, window order, and sample count that make
// the broadening error provably smaller than the free-energy tolerance.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "spinspec/window.hpp"

namespace spinspec {

struct ErrorBudget {
    int n = 1;              // spins
    double beta = 1.0;      // inverse temperature
    double gamma = 0.1;     // free-energy tolerance, fraction of k_B theta
    double epsilon = 0.1;   // allowed failure probability (noise studies)

    // Equivalent relative partition-function budget, 1 - e^{-gamma n}.
    double xi() const;
};

void validate_budget(const ErrorBudget& b);

struct SamplingPlan {
    double delta_E = 0.0;   // bandwidth the plan was built for
    double dt = 0.0;        // sampling interval, dt * delta_E == 2 pi
    double delta_e = 0.0;   // energy resolution
    double T0 = 0.0;        // base window width, T0 * delta_e == 2 pi
    int theta = 0;          // window order (even)
    std::int64_t N = 0;     // total samples, ceil(theta delta_E / delta_e) even
    WindowSamples window;   // weights at t_l = l dt, l = 0..N/2
};

// Planner constants: mu = 1/(2 ln pi - 1), kappa = 5/2 + ln(2c/sqrt 6)/ln pi,
// kappa' = mu kappa ln pi.
double planner_mu();
double planner_kappa();
double planner_kappa_prime();

// Refuse plans larger than this unless forced; the exponential-precision
// regime is explored at small n anyway.
inline constexpr std::int64_t kMaxSamples = 100'000'000;

// delta_e = ln(1 + xi/2)/beta; theta/2 = ceil(mu beta dE + mu ln(1/xi) + kappa');
// N = ceil(theta dE / delta_e) rounded up to even. The result satisfies
// beta*delta_e = ln(1+xi/2) to machine precision and pushes the side-lobe
// area below (xi/2) e^{-beta dE}.
SamplingPlan plan_deterministic(const ErrorBudget& budget, double delta_E,
                                bool force_large_N = false);

struct ScalingRow {
    int n;
    double delta_E;
    double delta_e;
    int theta;
    std::int64_t N;
};

struct ScalingStudy {
    std::vector<ScalingRow> rows;
    double fitted_exponent = 0.0;  // log-log slope of N against n
};

// Run the planner across n_values with bandwidth delta_E_rule(n); fit
// log N = a log n + b by least squares.
ScalingStudy scaling_study(const ErrorBudget& budget_template,
                           const std::vector<int>& n_values,
                           const std::function<double(int)>& delta_E_rule);

}  // namespace spinspec
