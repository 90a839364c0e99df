#include "spinspec/estimate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinspec/numerics.hpp"
#include "spinspec/window.hpp"

namespace spinspec {

namespace {

void check_plan(const SamplingPlan& plan, std::size_t count) {
    // The closed form below integrates e^{i E t_l} e^{-beta E} over one
    // period analytically, which collapses only when e^{i t_l dE} = 1, i.e.
    // at the critical spacing.
    if (std::abs(plan.dt * plan.delta_E - 2.0 * M_PI) > 1e-9 * 2.0 * M_PI)
        throw std::invalid_argument(
            "estimate: plan spacing is not critical (dt * dE != 2 pi)");
    if (static_cast<std::int64_t>(count) != plan.N / 2 + 1)
        throw std::invalid_argument("estimate: sample set incomplete");
}

void check_samples(const SampleSet& samples) {
    check_plan(samples.plan, samples.samples.size());
    for (std::size_t l = 0; l < samples.samples.size(); ++l)
        if (samples.samples[l].l != static_cast<std::int64_t>(l))
            throw std::invalid_argument("estimate: sample indices not 0..N/2");
}

}  // namespace

DosCurve reconstruct_dos(const SampleSet& samples, std::int64_t grid_points) {
    check_samples(samples);
    if (grid_points < 2)
        throw std::invalid_argument("dos: need at least 2 grid points");
    const SamplingPlan& plan = samples.plan;
    const double dim = static_cast<double>(samples.dimension);
    DosCurve curve;
    curve.grid.resize(grid_points);
    curve.values.resize(grid_points);
    for (std::int64_t k = 0; k < grid_points; ++k) {
        const double E = plan.delta_E * k / (grid_points - 1);
        KahanSum acc;
        acc.add(plan.window.weights[0] * samples.samples[0].g.real());
        for (std::size_t l = 1; l < samples.samples.size(); ++l) {
            const double t = samples.samples[l].t;
            const std::complex<double> g = samples.samples[l].g;
            // Re(g e^{i E t}) folds in the conjugate negative-l samples
            acc.add(2.0 * plan.window.weights[l] *
                    (g.real() * std::cos(E * t) - g.imag() * std::sin(E * t)));
        }
        curve.grid[k] = E;
        curve.values[k] = plan.dt / (2.0 * M_PI) * dim * acc.value();
    }
    return curve;
}

double estimate_partition(const SamplingPlan& plan,
                          const std::vector<std::complex<double>>& g_values,
                          std::int64_t dimension, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("estimate: beta <= 0");
    check_plan(plan, g_values.size());
    KahanSum acc;
    acc.add(plan.window.weights[0] * g_values[0].real());
    for (std::size_t l = 1; l < g_values.size(); ++l) {
        const double tau = l * plan.dt / beta;
        acc.add(2.0 * plan.window.weights[l] *
                (g_values[l].real() - tau * g_values[l].imag()) /
                (1.0 + tau * tau));
    }
    const double prefactor = static_cast<double>(dimension) * plan.dt /
                             (2.0 * M_PI * beta) *
                             -std::expm1(-beta * plan.delta_E);
    return prefactor * acc.value();
}

double estimate_partition(const SampleSet& samples, double beta) {
    check_samples(samples);
    std::vector<std::complex<double>> g;
    g.reserve(samples.samples.size());
    for (const auto& s : samples.samples) g.push_back(s.g);
    return estimate_partition(samples.plan, g, samples.dimension, beta);
}

double estimate_free_energy(double Z_tilde, int n, double beta) {
    if (n < 1) throw std::invalid_argument("free energy: n < 1");
    if (!(beta > 0.0)) throw std::invalid_argument("free energy: beta <= 0");
    if (!(Z_tilde > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return -std::log(Z_tilde) / (n * beta);
}

double relative_error(double Z_tilde, double Z) {
    if (!(Z > 0.0)) throw std::invalid_argument("relative error: Z <= 0");
    return std::abs(Z_tilde - Z) / Z;
}

SingleStateBound single_state_error_bound(double E_m, double delta_E,
                                          double beta, int theta,
                                          double delta_e) {
    if (E_m < 0.0 || E_m > delta_E)
        throw std::invalid_argument("single-state bound: E_m outside [0, dE]");
    const double A =
        theta <= 60 ? side_lobe_area(theta) : lemma_bounds(theta, delta_e).a_side_bound;
    SingleStateBound b;
    b.z_min = (1.0 - A) * std::exp(-beta * (E_m + delta_e)) +
              A * std::exp(-beta * delta_E);
    b.z_max = (1.0 - A) * std::exp(-beta * (E_m - delta_e)) + A;
    const double Z_m = std::exp(-beta * E_m);
    b.r_bound = std::max(std::abs(b.z_min / Z_m - 1.0),
                         std::abs(b.z_max / Z_m - 1.0));
    return b;
}

EstimateReport make_report(double Z_tilde, double Z_exact, int n, double beta,
                           double gamma) {
    EstimateReport rep;
    rep.Z_tilde = Z_tilde;
    rep.Z_exact = Z_exact;
    rep.beta = beta;
    rep.gamma = gamma;
    rep.xi = -std::expm1(-gamma * n);
    rep.F_exact = -std::log(Z_exact) / (n * beta);
    rep.catastrophic = !(Z_tilde > 0.0);
    rep.F_tilde = estimate_free_energy(Z_tilde, n, beta);
    rep.r = relative_error(Z_tilde, Z_exact);
    rep.pass_r = rep.r < rep.xi;
    rep.pass_free_energy =
        !rep.catastrophic && std::abs(rep.F_tilde - rep.F_exact) < gamma / beta;
    return rep;
}

}  // namespace spinspec
