#include "spinspec/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "spinspec/numerics.hpp"
#include "spinspec/pipeline.hpp"
#include "spinspec/rng.hpp"

namespace spinspec {

double variance_sum(const SamplingPlan& plan, double beta, double sigma_g,
                    std::int64_t dimension, bool include_l0) {
    if (!(sigma_g >= 0.0)) throw std::invalid_argument("variance: sigma_g < 0");
    KahanSum s;
    const std::int64_t half = plan.N / 2;
    for (std::int64_t l = 1; l <= half; ++l) {
        const double b = plan.window.weights[static_cast<std::size_t>(l)];
        const double tau = l * plan.dt / beta;
        s.add(b * b / (1.0 + tau * tau));
    }
    if (include_l0) {
        const double b0 = plan.window.weights[0];
        s.add(0.25 * b0 * b0);
    }
    const double dim = static_cast<double>(dimension);
    const double band = -std::expm1(-beta * plan.delta_E);
    const double pref = plan.dt / (2.0 * M_PI * beta);
    return 4.0 * dim * dim * pref * pref * band * band * sigma_g * sigma_g *
           s.value();
}

double variance_integral(const SamplingPlan& plan, double beta, double sigma_g,
                         std::int64_t dimension,
                         bool keep_finite_band_prefactor) {
    if (!(sigma_g >= 0.0)) throw std::invalid_argument("variance: sigma_g < 0");
    const double nu_sq = plan.theta * plan.T0 * plan.T0 / 12.0;
    const double dim = static_cast<double>(dimension);
    double v = dim * dim * sigma_g * sigma_g / (beta * plan.delta_E) *
               erfcx(beta / std::sqrt(nu_sq));
    if (keep_finite_band_prefactor) {
        const double band = -std::expm1(-beta * plan.delta_E);
        v *= band * band;
    }
    return v;
}

VariancePrediction predict_variance(const SamplingPlan& plan, double beta,
                                    double sigma_g, std::int64_t dimension,
                                    bool include_l0) {
    VariancePrediction p;
    p.var_sum = variance_sum(plan, beta, sigma_g, dimension, include_l0);
    p.var_integral = variance_integral(plan, beta, sigma_g, dimension);
    p.nu_sq = plan.theta * plan.T0 * plan.T0 / 12.0;
    p.includes_l0 = include_l0;
    return p;
}

FailureProbability failure_probability(double Z, double sigma_Z, double gamma,
                                       int n) {
    if (!(Z > 0.0)) throw std::invalid_argument("failure: Z <= 0");
    if (!(sigma_Z >= 0.0)) throw std::invalid_argument("failure: sigma < 0");
    FailureProbability out;
    if (sigma_Z == 0.0) return out;  // degenerate distribution never fails
    const double s = std::sqrt(2.0) * sigma_Z;
    const double upper = Z * std::expm1(gamma * n);     // e^{gn} - 1
    const double lower = Z * -std::expm1(-gamma * n);   // 1 - e^{-gn}
    out.two_sided = 0.5 * (std::erfc(upper / s) + std::erfc(lower / s));
    out.symmetric = std::erfc(Z * gamma * n / s);
    return out;
}

RequiredSigma required_sigma_g(double Z, int n, std::int64_t dimension,
                               double beta, double gamma, double eps,
                               const SamplingPlan& plan, double sigma_scale) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("required sigma: eps outside (0, 1)");
    // sigma_Z is exactly linear in sigma_g; bisect the monotone failure
    // probability on the sigma_g axis. The l = 0 term is included: the
    // sampler perturbs every component, g~_0 too.
    const double unit =
        std::sqrt(variance_sum(plan, beta, 1.0, dimension, true)) *
        sigma_scale;
    auto failure = [&](double sg) {
        return failure_probability(Z, unit * sg, gamma, n).two_sided;
    };
    double hi = 1.0;
    while (failure(hi) < eps) {
        hi *= 2.0;
        if (hi > 1e300)
            throw std::runtime_error("required sigma: eps unreachable");
    }
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (failure(mid) <= eps ? lo : hi) = mid;
    }
    RequiredSigma out;
    out.bisection = 0.5 * (lo + hi);
    out.closed_form = std::sqrt(0.5 * beta * plan.delta_E) * Z * gamma * n /
                      (static_cast<double>(dimension) * erfc_inv(eps));
    return out;
}

NoiseStudyResult monte_carlo_study(const Hamiltonian& h,
                                   const ErrorBudget& budget,
                                   const NoiseModel& noise,
                                   std::int64_t trials, std::uint64_t seed,
                                   int threads, bool include_l0_formula) {
    if (trials < 1) throw std::invalid_argument("monte carlo: trials < 1");
    validate_budget(budget);
    validate_noise(noise);
    const Spectrum spectrum = exact_spectrum(h);
    const double Z = partition_function(spectrum, budget.beta);
    const double F = free_energy_per_spin(spectrum, budget.beta);
    const SamplingFrame frame = make_frame(spectrum, h, budget, {});
    const SamplingPlan plan = plan_deterministic(budget, frame.delta_E);
    const auto base = exact_series(energy_levels(spectrum), spectrum.dimension,
                                   plan, frame.offset);
    const double unshift = std::exp(budget.beta * frame.offset);
    const double tol = budget.gamma / budget.beta;

    std::vector<double> z_values(static_cast<std::size_t>(trials));
    std::vector<char> failed(static_cast<std::size_t>(trials));
    std::vector<char> catastrophic(static_cast<std::size_t>(trials));
    auto run_block = [&](std::int64_t start, std::int64_t stop) {
        for (std::int64_t trial = start; trial < stop; ++trial) {
            const std::uint64_t trial_seed = substream_seed(seed, 1, trial);
            const auto values = apply_noise(plan, base, noise, trial_seed);
            const double Zt =
                unshift * estimate_partition(plan, values, spectrum.dimension,
                                             budget.beta);
            const double Ft =
                estimate_free_energy(Zt, spectrum.n, budget.beta);
            const bool cat = !(Zt > 0.0);
            z_values[trial] = Zt;
            catastrophic[trial] = cat;
            failed[trial] = cat || !(std::abs(Ft - F) < tol);
        }
    };
    const int workers =
        std::max(1, std::min<int>(threads, static_cast<int>(
                                               std::thread::hardware_concurrency())));
    if (workers <= 1 || trials < 2 * workers) {
        run_block(0, trials);
    } else {
        std::vector<std::thread> pool;
        const std::int64_t chunk = (trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::int64_t start = w * chunk;
            const std::int64_t stop = std::min<std::int64_t>(trials, start + chunk);
            if (start >= stop) break;
            pool.emplace_back(run_block, start, stop);
        }
        for (auto& th : pool) th.join();
    }

    // Serial reduction in trial order: results identical for any thread count.
    KahanSum mean_acc;
    for (double z : z_values) mean_acc.add(z);
    const double mean = mean_acc.value() / static_cast<double>(trials);
    KahanSum var_acc;
    for (double z : z_values) var_acc.add((z - mean) * (z - mean));
    std::int64_t fail_count = 0, cat_count = 0;
    for (std::int64_t i = 0; i < trials; ++i) {
        fail_count += failed[static_cast<std::size_t>(i)];
        cat_count += catastrophic[static_cast<std::size_t>(i)];
    }

    NoiseStudyResult res;
    res.trials = trials;
    res.seed = seed;
    res.empirical_mean_Z = mean;
    res.empirical_var =
        trials > 1 ? var_acc.value() / static_cast<double>(trials - 1) : 0.0;
    res.empirical_failure_rate =
        static_cast<double>(fail_count) / static_cast<double>(trials);
    res.catastrophic_count = cat_count;

    double sigma_eff = 0.0;
    if (const auto* g = std::get_if<AdditiveGaussian>(&noise))
        sigma_eff = g->sigma_g;
    else if (const auto* sh = std::get_if<Shots>(&noise))
        sigma_eff = std::sqrt(shots_mean_component_variance(sh->R));
    // Include the l = 0 term: apply_noise perturbs g~_0 like any other
    // component, so the honest prediction counts it.
    res.predicted_var = unshift * unshift *
                        variance_sum(plan, budget.beta, sigma_eff,
                                     spectrum.dimension, true);
    res.predicted_failure =
        failure_probability(Z, std::sqrt(res.predicted_var), budget.gamma,
                            budget.n)
            .two_sided;
    res.prediction = predict_variance(plan, budget.beta, sigma_eff,
                                      spectrum.dimension, include_l0_formula);
    res.trial_Z = std::move(z_values);
    res.trial_pass.resize(static_cast<std::size_t>(trials));
    for (std::int64_t i = 0; i < trials; ++i)
        res.trial_pass[static_cast<std::size_t>(i)] =
            !failed[static_cast<std::size_t>(i)];
    return res;
}

}  // namespace spinspec
