#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "spinspec/lattice.hpp"
#include "spinspec/pipeline.hpp"
#include "spinspec/spectrum.hpp"

using namespace spinspec;
namespace {

Hamiltonian ising_ring(int n, double Jz, double h) {
    return build_hamiltonian(ring_graph(n), IsingLongitudinal{Jz, h});
}
}  // namespace

TEST_CASE("end-to-end: Ising ring n=8 meets its error budget") {
    const Hamiltonian h = ising_ring(8, 1.0, 0.5);
    const ErrorBudget budget{8, 1.0, 0.1, 0.1};
    const PipelineResult res = run_pipeline(h, budget, Exact{}, 1);

    CHECK(res.report.pass_r);
    CHECK(res.report.pass_free_energy);
    CHECK(!res.report.catastrophic);
    CHECK(res.report.r < 0.01);  // exact sampling leaves only broadening
    CHECK(res.report.xi == doctest::Approx(budget.xi()).epsilon(1e-15));

    // Frame bookkeeping: guarded frame is the spectral spread plus one
    // delta_e pad on each side, sampled at an offset of delta_e.
    CHECK(res.frame_delta_E ==
          doctest::Approx(res.spectrum.delta_E + 2.0 * res.plan.delta_e)
              .epsilon(1e-12));
    CHECK(res.energy_offset == res.plan.delta_e);
    CHECK(res.plan.delta_E == res.frame_delta_E);
    CHECK(res.samples.energy_offset == res.energy_offset);
    CHECK(res.samples.samples.size() == res.plan.window.weights.size());

    const Spectrum oracle = exact_spectrum(h);
    CHECK(res.report.Z_exact ==
          doctest::Approx(partition_function(oracle, 1.0)).epsilon(1e-14));
    CHECK(res.report.F_exact ==
          doctest::Approx(free_energy_per_spin(oracle, 1.0)).epsilon(1e-14));
}

TEST_CASE("guard band rescues the edge states") {
    // h = 0 puts eigenstates exactly at both frame edges (0 and dE), where
    // the unguarded reconstruction wraps half of each main lobe around.
    const Hamiltonian h = ising_ring(4, 1.0, 0.0);
    const ErrorBudget budget{4, 1.0, 0.1, 0.1};

    PipelineOptions off;
    off.guard_band = false;
    const PipelineResult guarded = run_pipeline(h, budget, Exact{}, 1);
    const PipelineResult raw = run_pipeline(h, budget, Exact{}, 1, off);

    CHECK(guarded.report.r < budget.xi() / 100.0);
    CHECK(raw.report.r > 0.01);
    CHECK(raw.report.r > 10.0 * guarded.report.r);
    CHECK(raw.energy_offset == 0.0);
    CHECK(raw.frame_delta_E == doctest::Approx(raw.spectrum.delta_E));
}

TEST_CASE("bandwidth-bound frame is wider and still certified") {
    const Hamiltonian h = ising_ring(6, 0.8, 0.4);
    const ErrorBudget budget{6, 1.0, 0.1, 0.1};
    PipelineOptions bb;
    bb.use_bandwidth_bound = true;
    const PipelineResult exact_frame = run_pipeline(h, budget, Exact{}, 1);
    const PipelineResult bound_frame = run_pipeline(h, budget, Exact{}, 1, bb);

    CHECK(bound_frame.frame_delta_E > exact_frame.frame_delta_E);
    CHECK(bound_frame.frame_delta_E ==
          doctest::Approx(bandwidth_bound(h) +
                          2.0 * bound_frame.plan.delta_e));
    CHECK(bound_frame.report.pass_r);
    CHECK(bound_frame.report.pass_free_energy);
}

TEST_CASE("single-level spectrum requires the guard band") {
    const Hamiltonian h = build_hamiltonian(
        LatticeGraph{1, {}, false}, Synthetic{{{0.0, 1}}, 0});
    const ErrorBudget budget{1, 1.0, 0.1, 0.1};

    PipelineOptions off;
    off.guard_band = false;
    CHECK_THROWS_AS(run_pipeline(h, budget, Exact{}, 1, off),
                    std::invalid_argument);

    const PipelineResult res = run_pipeline(h, budget, Exact{}, 1);
    CHECK(res.report.pass_r);
    CHECK(res.report.r < 1e-3);
    CHECK(res.frame_delta_E ==
          doctest::Approx(2.0 * res.plan.delta_e).epsilon(1e-12));
}

TEST_CASE("dense XXZ model runs through the same pipeline") {
    const Hamiltonian h =
        build_hamiltonian(ring_graph(4), XXZ{0.7, 0.3});
    const ErrorBudget budget{4, 1.0, 0.1, 0.1};
    const PipelineResult res = run_pipeline(h, budget, Exact{}, 1);
    CHECK(res.report.pass_r);
    CHECK(res.report.pass_free_energy);
    CHECK(res.spectrum.dimension == 16);
}

TEST_CASE("noisy pipeline is seed-deterministic") {
    const Hamiltonian h = ising_ring(4, 1.0, 0.3);
    const ErrorBudget budget{4, 1.0, 0.1, 0.1};
    const NoiseModel noise = Shots{256};
    const PipelineResult a = run_pipeline(h, budget, noise, 42);
    const PipelineResult b = run_pipeline(h, budget, noise, 42);
    const PipelineResult c = run_pipeline(h, budget, noise, 43);
    CHECK(a.report.Z_tilde == b.report.Z_tilde);
    CHECK(a.report.Z_tilde != c.report.Z_tilde);
}
