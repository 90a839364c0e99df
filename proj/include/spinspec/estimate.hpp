// Reconstruction of the broadened density of states from the Fourier samples
// and the closed-form windowed Boltzmann quadrature for Z~, plus the
// single-eigenstate error bounds that certify r < xi.
#pragma once

#include <cstdint>
#include <vector>

#include "spinspec/sampler.hpp"

namespace spinspec {

struct EstimateReport {
    double Z_tilde = 0.0;
    double F_tilde = 0.0;    // per spin, shifted scale; NaN if Z~ <= 0
    double Z_exact = 0.0;
    double F_exact = 0.0;
    double r = 0.0;          // |Z~ - Z| / Z
    double xi = 0.0;
    double gamma = 0.0;
    double beta = 0.0;
    bool pass_r = false;         // r < xi
    bool pass_free_energy = false;  // |F~ - F| < gamma / beta
    bool catastrophic = false;   // Z~ <= 0 (noise-dominated estimate)
};

struct DosCurve {
    std::vector<double> grid;    // energies in [0, delta_E], strictly increasing
    std::vector<double> values;  // broadened density at the grid points
};

// rho~(E) = (dt/2pi) dim [ b_0 Re g~_0 + 2 sum_{l>0} b_l Re(g~_l e^{i E t_l}) ]
// on a uniform grid; real by the imposed Hermitian symmetry. Inspection
// output only -- the partition estimate below never goes through this grid.
DosCurve reconstruct_dos(const SampleSet& samples, std::int64_t grid_points);

// Z~ = (dim dt / 2 pi beta)(1 - e^{-beta dE}) { b_0 Re g~_0 +
//        2 sum_{l=1}^{N/2} b_l [Re g~_l - (t_l/beta) Im g~_l] / (1 + (t_l/beta)^2) }
// -- the exact Boltzmann integral of the reconstruction over one period,
// closed form valid at the plan's critical spacing dt * dE = 2 pi (asserted).
double estimate_partition(const SampleSet& samples, double beta);
double estimate_partition(const SamplingPlan& plan,
                          const std::vector<std::complex<double>>& g_values,
                          std::int64_t dimension, double beta);

// F~ = -ln(Z~)/(n beta); NaN for Z~ <= 0 (callers treat that as a failed
// trial, not an exception).
double estimate_free_energy(double Z_tilde, int n, double beta);

double relative_error(double Z_tilde, double Z);

// Broadening bounds for a lone eigenstate at E_m in [0, dE], assuming its
// main lobe fits inside the period:
//   Z~_min = (1-A) e^{-beta(E_m+de)} + A e^{-beta dE}
//   Z~_max = (1-A) e^{-beta(E_m-de)} + A
// with A the side-lobe area (quadrature for theta <= 60, closed-form bound
// beyond). r_bound = max deviation of Z~/Z_m from 1.
struct SingleStateBound {
    double z_min, z_max, r_bound;
};
SingleStateBound single_state_error_bound(double E_m, double delta_E,
                                          double beta, int theta,
                                          double delta_e);

// Assemble the full report against the exact oracle values.
EstimateReport make_report(double Z_tilde, double Z_exact, int n, double beta,
                           double gamma);

}  // namespace spinspec
