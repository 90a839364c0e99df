// Spin-1/2 lattice model specifications: interaction graphs, model variants,
// and rigorous energy-bandwidth bounds.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace spinspec {

struct LatticeGraph {
    int n = 0;                                // number of spins
    std::vector<std::pair<int, int>> edges;   // unordered pairs, i < j
    bool periodic = false;
};

LatticeGraph chain_graph(int n);
LatticeGraph ring_graph(int n);
LatticeGraph grid_graph(int rows, int cols, bool periodic);

// Throws std::invalid_argument on self-loops, duplicate edges, or an index
// out of range.
void validate_graph(const LatticeGraph& g);

// H = J_z sum_edges (1 - s_i s_j) + h sum_i (1 - s_i), s = ±1. All energies
// are >= 0 when J_z, h >= 0 and the all-up configuration sits at exactly 0.
struct IsingLongitudinal {
    double Jz = 0.0;
    double h = 0.0;
};

// Nearest-neighbour XXZ exchange; not diagonal in the computational basis,
// handled by dense Hermitian diagonalization.
struct XXZ {
    double Jx = 0.0;
    double Jz = 0.0;
};

// n decoupled two-level systems with single-spin gap 2h: H = h sum_i (1 - s_i).
struct FreeSpins {
    double h = 0.0;
};

// Explicit level list, for synthetic spectra and the single-eigenstate
// analysis (dimension 1 is allowed and useful there).
struct SyntheticLevel {
    double energy = 0.0;
    std::int64_t degeneracy = 1;
};
struct Synthetic {
    std::vector<SyntheticLevel> levels;
    std::int64_t dimension = 0;  // 0 means "sum of degeneracies"

    std::int64_t effective_dimension() const;
};

using ModelSpec = std::variant<IsingLongitudinal, XXZ, FreeSpins, Synthetic>;

struct Hamiltonian {
    LatticeGraph graph;
    ModelSpec model;
    bool diagonal = true;  // false only for XXZ
};

// Largest spin count the dense XXZ eigensolver accepts (dimension 4096).
inline constexpr int kDenseSolverLimit = 12;
// Largest spin count for diagonal bit-configuration enumeration.
inline constexpr int kEnumerationLimit = 24;

Hamiltonian build_hamiltonian(const LatticeGraph& graph, const ModelSpec& model);

// Upper bound on E_max - E_min, linear in the edge count:
//   Ising      2|J_z|·|edges| + 2|h|·n        (exact for bipartite h=0 cases)
//   XXZ        2(2|J_x| + |J_z|)·|edges|      (per-edge eigenvalue range)
//   FreeSpins  2|h|·n
//   Synthetic  max level - min level          (exact)
double bandwidth_bound(const Hamiltonian& h);

std::string model_name(const ModelSpec& m);

}  // namespace spinspec
