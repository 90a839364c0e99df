// Exact-diagonalization oracle: full eigenenergy list shifted to [0, dE],
// exact partition function and free energy per spin.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "spinspec/lattice.hpp"

namespace spinspec {

struct Spectrum {
    std::vector<double> energies;   // sorted ascending, energies[0] == 0
    std::int64_t dimension = 0;     // == energies.size()
    double e_min_original = 0.0;    // subtracted by the shift
    double delta_E = 0.0;           // max - min of shifted energies
    int n = 0;                      // spin count; 0 allowed for Synthetic
};

// Distinct-energy compression of a Spectrum, used by the trace and partition
// sums so degenerate levels cost one exponential instead of many.
struct EnergyLevel {
    double energy;
    std::int64_t degeneracy;
};

Spectrum exact_spectrum(const Hamiltonian& h);

// Grouping tolerance: energies within |a-b| <= tol*max(1,|a|) merge into one
// level. Diagonal models produce exactly representable sums, so 0 works; the
// dense path needs a small tolerance for eigensolver jitter.
std::vector<EnergyLevel> energy_levels(const Spectrum& s, double tol = 1e-9);

// Z = sum_m exp(-beta E_m) on the shifted scale, compensated summation.
double partition_function(const Spectrum& s, double beta);

// F = -ln(Z) / (n beta) on the shifted scale. Callers needing the original
// scale add e_min_original / n.
double free_energy_per_spin(const Spectrum& s, double beta);

// Two-column CSV (energy, degeneracy), one row per distinct level.
void write_spectrum_csv(std::ostream& out, const Spectrum& s);

}  // namespace spinspec
