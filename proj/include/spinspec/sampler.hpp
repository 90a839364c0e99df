// Exact and noisy estimates of the normalized trace g(t) = Tr e^{-iHt} / dim
// at the plan's sample times, simulating the two measurement schemes: per-shot
// interferometric readout (trinomial counts) and ensemble readout with
// additive Gaussian noise.
#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "spinspec/plan.hpp"
#include "spinspec/spectrum.hpp"

namespace spinspec {

struct Exact {};
struct Shots {
    std::int64_t R = 1;  // repetitions per quadrature
};
struct AdditiveGaussian {
    double sigma_g = 0.0;  // std-dev applied independently to Re and Im
};
using NoiseModel = std::variant<Exact, Shots, AdditiveGaussian>;

void validate_noise(const NoiseModel& m);
std::string noise_name(const NoiseModel& m);

struct Sample {
    std::int64_t l;
    double t;
    std::complex<double> g;
};

struct SampleSet {
    SamplingPlan plan;
    std::vector<Sample> samples;  // l = 0..N/2, ascending
    NoiseModel noise;
    std::uint64_t seed = 0;
    std::int64_t dimension = 0;   // Hilbert-space dimension of the source
    int n = 0;                    // spin count carried through for reports
    double energy_offset = 0.0;   // frame offset applied while sampling
    std::string config_hash;      // provenance, set by the CLI writers
};

// g(t) = dim^{-1} sum_m e^{-i E_m t}, compensated accumulation over the
// distinct-level compression.
std::complex<double> exact_g(const Spectrum& s, double t);
std::complex<double> exact_g(const std::vector<EnergyLevel>& levels,
                             std::int64_t dimension, double t);

// Outcome probabilities of the two interferometric circuits:
//   p_x0 = |1+ig|^2/4, p_x1 = |1-ig|^2/4, p_y0 = |1+g|^2/4, p_y1 = |1-g|^2/4.
// Remaining mass 1 - (p0 + p1) is the orthogonal-components outcome. The
// estimators are Re g = p_y0 - p_y1 and Im g = p_x1 - p_x0.
struct CircuitProbabilities {
    double p_x0, p_x1, p_y0, p_y1;
};
CircuitProbabilities circuit_probabilities(std::complex<double> g);

// Estimate g at every t_l = l dt, l = 0..N/2. energy_offset shifts the
// sampled spectrum by a constant (simulating H + offset), which the pipeline
// uses to centre the band inside the sampling frame; the exact relation is
// g_offset(t) = e^{-i offset t} g(t).
//
// Exact: g~ = g(t_l). Shots{R}: R trinomial draws per quadrature, g~ from the
// count differences (unbiased). AdditiveGaussian: independent zero-mean
// Gaussians on Re and Im. Deterministic for a given seed; sample l uses
// substream (seed, l) so evaluation order is free.
SampleSet sample_series(const Spectrum& s, const SamplingPlan& plan,
                        const NoiseModel& noise, std::uint64_t seed,
                        double energy_offset = 0.0);

// Exact g at every plan sample time with the frame offset folded in:
// base[l] = e^{-i offset t_l} g(t_l).
std::vector<std::complex<double>> exact_series(
    const std::vector<EnergyLevel>& levels, std::int64_t dimension,
    const SamplingPlan& plan, double energy_offset = 0.0);

// Noise stage of sample_series, reusable against a cached exact series so
// Monte Carlo trials skip the trace recomputation. Bit-identical to the
// corresponding sample_series call.
std::vector<std::complex<double>> apply_noise(
    const SamplingPlan& plan, const std::vector<std::complex<double>>& base,
    const NoiseModel& noise, std::uint64_t seed);

// Mean per-component estimator variance of the Shots model. For any g the
// X/Y average is exactly 1/(2R), which is what the closed-form variance
// propagation uses in place of sigma_g^2.
double shots_mean_component_variance(std::int64_t R);

// CSV with one "# meta: {...}" JSON header line (plan, noise, seed, dimension)
// then rows l,t,re,im at full round-trip precision.
void write_sample_set_csv(std::ostream& out, const SampleSet& set);
SampleSet read_sample_set_csv(std::istream& in);

}  // namespace spinspec
