// End-to-end run: spectrum -> sampling frame -> plan -> samples -> estimate,
// compared against the exact oracle.
#pragma once

#include <cstdint>

#include "spinspec/estimate.hpp"
#include "spinspec/lattice.hpp"

namespace spinspec {

struct PipelineOptions {
    // Use bandwidth_bound instead of the exact spectral spread for the frame.
    bool use_bandwidth_bound = false;
    // Pad the sampling frame by delta_e on each side and sample the spectrum
    // offset to the centre. Keeps every level's main lobe inside one period;
    // without it the edge states land exactly on the replica boundary, where
    // the ground state loses half its lobe (Z~ deficit ~ e^{-beta dE} weight)
    // and top states alias into the e^{-beta E} ~ 1 region. Disable only to
    // reproduce the uncorrected behaviour.
    bool guard_band = true;
    bool force_large_N = false;
};

struct PipelineResult {
    Spectrum spectrum;
    SamplingPlan plan;
    SampleSet samples;
    EstimateReport report;
    double frame_delta_E = 0.0;
    double energy_offset = 0.0;
};

// The frame bandwidth and offset the pipeline will use for a given spectrum.
struct SamplingFrame {
    double delta_E;
    double offset;
};
SamplingFrame make_frame(const Spectrum& s, const Hamiltonian& h,
                         const ErrorBudget& budget,
                         const PipelineOptions& options);

PipelineResult run_pipeline(const Hamiltonian& h, const ErrorBudget& budget,
                            const NoiseModel& noise, std::uint64_t seed,
                            const PipelineOptions& options = {});

}  // namespace spinspec
