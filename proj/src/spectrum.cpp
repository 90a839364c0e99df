#include "spinspec/spectrum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "spinspec/numerics.hpp"

namespace spinspec {

namespace {

Spectrum from_energies(std::vector<double> energies, int n) {
    if (energies.empty()) throw std::logic_error("spectrum: no energies");
    std::sort(energies.begin(), energies.end());
    Spectrum s;
    s.e_min_original = energies.front();
    for (double& e : energies) e -= s.e_min_original;
    energies.front() = 0.0;  // exact by construction, defensive against -0.0
    s.delta_E = energies.back();
    s.dimension = static_cast<std::int64_t>(energies.size());
    s.energies = std::move(energies);
    s.n = n;
    return s;
}

Spectrum enumerate_diagonal(const Hamiltonian& h) {
    const int n = h.graph.n;
    if (n > kEnumerationLimit)
        throw std::invalid_argument("spectrum: n above enumeration limit (24)");
    const std::uint64_t dim = 1ull << n;
    double Jz = 0.0, field = 0.0;
    if (const auto* is = std::get_if<IsingLongitudinal>(&h.model)) {
        Jz = is->Jz;
        field = is->h;
    } else {
        field = std::get<FreeSpins>(h.model).h;
    }
    std::vector<double> energies(dim);
    // Spin s_i = +1 for bit i clear. Each broken edge contributes 2 Jz, each
    // down spin 2 h; both counts are small integers so equal configurations
    // produce bit-identical doubles and degeneracies group exactly.
    for (std::uint64_t cfg = 0; cfg < dim; ++cfg) {
        int walls = 0;
        for (auto [i, j] : h.graph.edges)
            walls += static_cast<int>(((cfg >> i) ^ (cfg >> j)) & 1ull);
        int down = std::popcount(cfg);
        energies[cfg] = 2.0 * Jz * walls + 2.0 * field * down;
    }
    return from_energies(std::move(energies), n);
}

Spectrum dense_xxz(const Hamiltonian& h) {
    const int n = h.graph.n;
    if (n > kDenseSolverLimit)
        throw std::invalid_argument("spectrum: n above dense-solver limit (12)");
    const auto& m = std::get<XXZ>(h.model);
    const std::int64_t dim = std::int64_t{1} << n;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    // Pauli convention: z-z term is Jz s_i s_j on the diagonal; the x-x + y-y
    // exchange couples |01> and |10> on each edge with amplitude 2 Jx.
    for (std::int64_t cfg = 0; cfg < dim; ++cfg) {
        double diag = 0.0;
        for (auto [i, j] : h.graph.edges) {
            int bi = static_cast<int>((cfg >> i) & 1);
            int bj = static_cast<int>((cfg >> j) & 1);
            diag += m.Jz * (bi == bj ? 1.0 : -1.0);
            if (bi != bj) {
                std::int64_t flipped =
                    cfg ^ (std::int64_t{1} << i) ^ (std::int64_t{1} << j);
                H(flipped, cfg) += 2.0 * m.Jx;
            }
        }
        H(cfg, cfg) = diag;
    }
    if (!H.isApprox(H.transpose(), 1e-12))
        throw std::logic_error("spectrum: XXZ matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("spectrum: dense eigensolver failed");
    std::vector<double> energies(solver.eigenvalues().data(),
                                 solver.eigenvalues().data() + dim);
    return from_energies(std::move(energies), n);
}

Spectrum synthetic_spectrum(const Hamiltonian& h) {
    const auto& syn = std::get<Synthetic>(h.model);
    std::vector<double> energies;
    energies.reserve(static_cast<std::size_t>(syn.effective_dimension()));
    for (const auto& lv : syn.levels)
        for (std::int64_t k = 0; k < lv.degeneracy; ++k)
            energies.push_back(lv.energy);
    return from_energies(std::move(energies), h.graph.n);
}

}  // namespace

Spectrum exact_spectrum(const Hamiltonian& h) {
    if (std::holds_alternative<XXZ>(h.model)) return dense_xxz(h);
    if (std::holds_alternative<Synthetic>(h.model)) return synthetic_spectrum(h);
    return enumerate_diagonal(h);
}

std::vector<EnergyLevel> energy_levels(const Spectrum& s, double tol) {
    std::vector<EnergyLevel> levels;
    for (double e : s.energies) {
        if (!levels.empty() &&
            e - levels.back().energy <= tol * std::max(1.0, std::abs(e)))
            ++levels.back().degeneracy;
        else
            levels.push_back({e, 1});
    }
    return levels;
}

double partition_function(const Spectrum& s, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("partition: beta <= 0");
    KahanSum z;
    for (const auto& lv : energy_levels(s))
        z.add(static_cast<double>(lv.degeneracy) * std::exp(-beta * lv.energy));
    return z.value();
}

double free_energy_per_spin(const Spectrum& s, double beta) {
    if (s.n < 1)
        throw std::invalid_argument(
            "free energy: spectrum has no spin count (synthetic without n)");
    return -std::log(partition_function(s, beta)) / (s.n * beta);
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
    out << "energy,degeneracy\n";
    char buf[40];
    for (const auto& lv : energy_levels(s)) {
        std::snprintf(buf, sizeof buf, "%.17g", lv.energy);
        out << buf << ',' << lv.degeneracy << '\n';
    }
}

}  // namespace spinspec
