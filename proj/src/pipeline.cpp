#include "spinspec/pipeline.hpp"

#include <cmath>
#include <stdexcept>

namespace spinspec {

SamplingFrame make_frame(const Spectrum& s, const Hamiltonian& h,
                         const ErrorBudget& budget,
                         const PipelineOptions& options) {
    validate_budget(budget);
    double band = options.use_bandwidth_bound ? bandwidth_bound(h) : s.delta_E;
    SamplingFrame frame{band, 0.0};
    if (options.guard_band) {
        // delta_e depends only on the budget, so the frame can be padded
        // before the plan exists.
        const double delta_e = std::log1p(0.5 * budget.xi()) / budget.beta;
        frame.delta_E = band + 2.0 * delta_e;
        frame.offset = delta_e;
    } else if (!(frame.delta_E > 0.0)) {
        throw std::invalid_argument(
            "pipeline: zero bandwidth (single level) needs the guard band");
    }
    return frame;
}

PipelineResult run_pipeline(const Hamiltonian& h, const ErrorBudget& budget,
                            const NoiseModel& noise, std::uint64_t seed,
                            const PipelineOptions& options) {
    validate_noise(noise);
    PipelineResult out;
    out.spectrum = exact_spectrum(h);
    const SamplingFrame frame = make_frame(out.spectrum, h, budget, options);
    out.frame_delta_E = frame.delta_E;
    out.energy_offset = frame.offset;
    out.plan =
        plan_deterministic(budget, frame.delta_E, options.force_large_N);
    out.samples =
        sample_series(out.spectrum, out.plan, noise, seed, frame.offset);
    const double Z_frame = estimate_partition(out.samples, budget.beta);
    // The +offset sampling shift multiplied every Boltzmann weight by
    // e^{-beta offset}; undo it exactly.
    const double Z_tilde = std::exp(budget.beta * frame.offset) * Z_frame;
    const double Z = partition_function(out.spectrum, budget.beta);
    out.report = make_report(Z_tilde, Z, budget.n, budget.beta, budget.gamma);
    return out;
}

}  // namespace spinspec
