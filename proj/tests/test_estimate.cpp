#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "spinspec/estimate.hpp"
#include "spinspec/numerics.hpp"
#include "spinspec/plan.hpp"
#include "spinspec/sampler.hpp"
#include "spinspec/spectrum.hpp"

using namespace spinspec;
namespace {

const ErrorBudget kBudget{2, 1.0, 0.1, 0.1};

SampleSet delta_at_zero_samples(double delta_E, std::int64_t dim) {
    // Only g~_0 = 1 survives: a spectral weight spread evenly, whose
    // Boltzmann integral has the closed form dim (1 - e^{-beta dE})/(beta dE).
    SamplingPlan plan = plan_deterministic(kBudget, delta_E);
    SampleSet set;
    set.plan = plan;
    set.dimension = dim;
    set.n = kBudget.n;
    for (std::int64_t l = 0; l * 2 <= plan.N; ++l)
        set.samples.push_back({l, l * plan.dt, {l == 0 ? 1.0 : 0.0, 0.0}});
    return set;
}
}  // namespace

TEST_CASE("estimate_partition closed form: flat g~_0-only input") {
    const double dE = 4.0;
    const SampleSet set = delta_at_zero_samples(dE, 16);
    for (double beta : {0.5, 1.0, 2.0}) {
        const double want = 16.0 * (1.0 - std::exp(-beta * dE)) / (beta * dE);
        CHECK(estimate_partition(set, beta) ==
              doctest::Approx(want).epsilon(1e-14));
    }
}

TEST_CASE("estimate_partition overloads agree and reject bad input") {
    const SampleSet set = delta_at_zero_samples(4.0, 16);
    std::vector<std::complex<double>> g;
    for (const auto& s : set.samples) g.push_back(s.g);
    CHECK(estimate_partition(set, 1.0) ==
          estimate_partition(set.plan, g, set.dimension, 1.0));

    CHECK_THROWS_AS(estimate_partition(set, 0.0), std::invalid_argument);

    SampleSet off = set;
    off.plan.dt *= 1.001;  // breaks dt * dE = 2 pi
    CHECK_THROWS_AS(estimate_partition(off, 1.0), std::invalid_argument);

    SampleSet missing = set;
    missing.samples.pop_back();
    CHECK_THROWS_AS(estimate_partition(missing, 1.0), std::invalid_argument);

    SampleSet shuffled = set;
    std::swap(shuffled.samples[0].l, shuffled.samples[1].l);
    CHECK_THROWS_AS(estimate_partition(shuffled, 1.0), std::invalid_argument);
}

TEST_CASE("reconstructed density: peak position and total weight") {
    // A single eigenstate placed at 1.3 via the frame offset.
    const Spectrum one{{0.0}, 1, 0.0, 0.0, 1};
    const SamplingPlan plan = plan_deterministic(kBudget, 4.0);
    const SampleSet set = sample_series(one, plan, Exact{}, 0, 1.3);

    const DosCurve curve = reconstruct_dos(set, 1025);
    REQUIRE(curve.grid.size() == 1025);
    CHECK(curve.grid.front() == 0.0);
    CHECK(curve.grid.back() == doctest::Approx(4.0));

    std::size_t peak = 0;
    for (std::size_t k = 1; k < curve.values.size(); ++k)
        if (curve.values[k] > curve.values[peak]) peak = k;
    CHECK(std::abs(curve.grid[peak] - 1.3) < 0.02);

    // Periodic trapezoid integrates the trig polynomial exactly: total mass
    // is the dimension (1 here). The duplicated endpoint carries half weight
    // at each end, which is the periodic sum again.
    KahanSum mass;
    const double h = curve.grid[1] - curve.grid[0];
    for (std::size_t k = 0; k + 1 < curve.values.size(); ++k)
        mass.add(0.5 * h * (curve.values[k] + curve.values[k + 1]));
    CHECK(mass.value() == doctest::Approx(1.0).epsilon(1e-11));

    CHECK_THROWS_AS(reconstruct_dos(set, 1), std::invalid_argument);
}

TEST_CASE("closed-form partition estimate equals the Boltzmann quadrature") {
    const Spectrum s{{0.0, 1.1, 1.1, 2.7}, 4, 0.0, 2.7, 2};
    const SamplingPlan plan = plan_deterministic(kBudget, 4.0);
    const double offset = 0.5, beta = 0.8;
    const SampleSet set = sample_series(s, plan, Exact{}, 0, offset);

    // Integrate rho~(E) e^{-beta E} with rho~ evaluated from the Fourier sum
    // directly (no grid), over one period.
    auto rho = [&](double E) {
        KahanSum acc;
        acc.add(plan.window.weights[0] * set.samples[0].g.real());
        for (std::size_t l = 1; l < set.samples.size(); ++l) {
            const double t = set.samples[l].t;
            const auto g = set.samples[l].g;
            acc.add(2.0 * plan.window.weights[l] *
                    (g.real() * std::cos(E * t) - g.imag() * std::sin(E * t)));
        }
        return plan.dt / (2.0 * M_PI) * 4.0 * acc.value();
    };
    auto integrand = [&](double E) { return rho(E) * std::exp(-beta * E); };
    const auto q = integrate_adaptive(integrand, 0.0, plan.delta_E, 1e-12,
                                      1e-10, 8000);
    REQUIRE(q.converged);
    CHECK(estimate_partition(set, beta) ==
          doctest::Approx(q.value).epsilon(1e-6));
}

TEST_CASE("frame offset round trip recovers the partition function") {
    // Mirror of the pipeline's guard band at module level: widen the frame by
    // 2 delta_e, shift by delta_e while sampling, unshift Z~ afterwards.
    const Spectrum s{{0.0, 2.0}, 2, 0.0, 2.0, 1};
    const double beta = 1.0;
    SamplingPlan probe = plan_deterministic(kBudget, 1.0);  // for delta_e only
    const double de = probe.delta_e;
    const SamplingPlan plan = plan_deterministic(kBudget, s.delta_E + 2.0 * de);
    CHECK(plan.delta_e == de);  // delta_e depends on the budget alone
    const SampleSet set = sample_series(s, plan, Exact{}, 0, de);
    const double Z_tilde = std::exp(beta * de) * estimate_partition(set, beta);
    const double Z = partition_function(s, beta);
    CHECK(relative_error(Z_tilde, Z) < kBudget.xi());
    CHECK(relative_error(Z_tilde, Z) < 0.01);  // far inside the budget
}

TEST_CASE("free energy and relative error helpers") {
    CHECK(estimate_free_energy(2.0, 4, 0.5) ==
          doctest::Approx(-std::log(2.0) / 2.0).epsilon(1e-15));
    CHECK(std::isnan(estimate_free_energy(0.0, 4, 0.5)));
    CHECK(std::isnan(estimate_free_energy(-1.0, 4, 0.5)));
    CHECK_THROWS_AS(estimate_free_energy(1.0, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(estimate_free_energy(1.0, 4, 0.0), std::invalid_argument);

    CHECK(relative_error(1.2, 1.0) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(relative_error(0.8, 1.0) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK_THROWS_AS(relative_error(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("single-state bounds bracket the true weight and tighten") {
    const double E_m = 2.0, dE = 8.0, beta = 1.0, de = 0.2;
    const double Z_m = std::exp(-beta * E_m);
    const auto b20 = single_state_error_bound(E_m, dE, beta, 20, de);
    CHECK(b20.z_min < Z_m);
    CHECK(Z_m < b20.z_max);
    CHECK(b20.r_bound > 0.0);

    const auto b6 = single_state_error_bound(E_m, dE, beta, 6, de);
    const auto b40 = single_state_error_bound(E_m, dE, beta, 40, de);
    CHECK(b40.r_bound < b20.r_bound);
    CHECK(b20.r_bound < b6.r_bound);

    // Past theta = 60 the side-lobe term switches to the closed-form bound;
    // the bracket must stay valid (the area term is negligible there).
    const auto b80 = single_state_error_bound(E_m, dE, beta, 80, de);
    CHECK(b80.z_min < Z_m);
    CHECK(Z_m < b80.z_max);
    CHECK(b80.r_bound <= b20.r_bound);

    CHECK_THROWS_AS(single_state_error_bound(-1.0, dE, beta, 20, de),
                    std::invalid_argument);
    CHECK_THROWS_AS(single_state_error_bound(9.0, dE, beta, 20, de),
                    std::invalid_argument);
}

TEST_CASE("report assembly: pass logic and the r < xi guarantee") {
    const int n = 8;
    const double beta = 1.0, gamma = 0.1, Z = 0.37;
    const double xi = -std::expm1(-gamma * n);

    const EstimateReport perfect = make_report(Z, Z, n, beta, gamma);
    CHECK(perfect.r == 0.0);
    CHECK(perfect.xi == doctest::Approx(xi).epsilon(1e-15));
    CHECK(perfect.pass_r);
    CHECK(perfect.pass_free_energy);
    CHECK(!perfect.catastrophic);
    CHECK(perfect.F_tilde == perfect.F_exact);
    CHECK(perfect.F_exact ==
          doctest::Approx(-std::log(Z) / (n * beta)).epsilon(1e-15));

    // Any deviation inside the r < xi disc must also satisfy the free-energy
    // guarantee |F~ - F| < gamma / beta.
    for (double q : {-0.9, -0.5, -0.1, 0.1, 0.5, 0.9}) {
        const EstimateReport rep =
            make_report(Z * (1.0 + q * xi), Z, n, beta, gamma);
        CHECK(rep.pass_r);
        CHECK(rep.pass_free_energy);
        CHECK(std::abs(rep.F_tilde - rep.F_exact) < gamma / beta);
    }

    const EstimateReport wide = make_report(Z * (1.0 + 1.5 * xi), Z, n, beta,
                                            gamma);
    CHECK(!wide.pass_r);

    const EstimateReport junk = make_report(-0.3, Z, n, beta, gamma);
    CHECK(junk.catastrophic);
    CHECK(std::isnan(junk.F_tilde));
    CHECK(!junk.pass_r);
    CHECK(!junk.pass_free_energy);
}
