#include "spinspec/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace spinspec {

LatticeGraph chain_graph(int n) {
    LatticeGraph g;
    g.n = n;
    g.periodic = false;
    for (int i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
    validate_graph(g);
    return g;
}

LatticeGraph ring_graph(int n) {
    if (n < 3) throw std::invalid_argument("ring_graph: need n >= 3");
    LatticeGraph g;
    g.n = n;
    g.periodic = true;
    for (int i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
    g.edges.emplace_back(0, n - 1);
    validate_graph(g);
    return g;
}

LatticeGraph grid_graph(int rows, int cols, bool periodic) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("grid_graph: need rows, cols >= 1");
    if (periodic && (rows == 2 || cols == 2))
        throw std::invalid_argument(
            "grid_graph: periodic wrap on a length-2 side duplicates edges");
    LatticeGraph g;
    g.n = rows * cols;
    g.periodic = periodic;
    auto site = [cols](int r, int c) { return r * cols + c; };
    auto add = [&g](int a, int b) {
        if (a > b) std::swap(a, b);
        g.edges.emplace_back(a, b);
    };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols)
                add(site(r, c), site(r, c + 1));
            else if (periodic && cols > 2)
                add(site(r, 0), site(r, c));
            if (r + 1 < rows)
                add(site(r, c), site(r + 1, c));
            else if (periodic && rows > 2)
                add(site(0, c), site(r, c));
        }
    validate_graph(g);
    return g;
}

void validate_graph(const LatticeGraph& g) {
    if (g.n < 0) throw std::invalid_argument("graph: negative spin count");
    std::set<std::pair<int, int>> seen;
    for (auto [i, j] : g.edges) {
        if (i == j) throw std::invalid_argument("graph: self-loop");
        int a = std::min(i, j), b = std::max(i, j);
        if (a < 0 || b >= g.n)
            throw std::invalid_argument("graph: site index out of range");
        if (!seen.emplace(a, b).second)
            throw std::invalid_argument("graph: duplicate edge");
    }
}

std::int64_t Synthetic::effective_dimension() const {
    std::int64_t sum = 0;
    for (const auto& lv : levels) sum += lv.degeneracy;
    return dimension > 0 ? dimension : sum;
}

namespace {

void validate_model(const LatticeGraph& graph, const ModelSpec& model) {
    if (const auto* syn = std::get_if<Synthetic>(&model)) {
        if (syn->levels.empty())
            throw std::invalid_argument("synthetic: empty level list");
        std::int64_t sum = 0;
        for (const auto& lv : syn->levels) {
            if (lv.degeneracy < 1)
                throw std::invalid_argument("synthetic: degeneracy < 1");
            if (!std::isfinite(lv.energy))
                throw std::invalid_argument("synthetic: non-finite level");
            sum += lv.degeneracy;
        }
        if (syn->dimension > 0 && syn->dimension != sum)
            throw std::invalid_argument(
                "synthetic: explicit dimension != sum of degeneracies");
        return;
    }
    if (graph.n < 1)
        throw std::invalid_argument("model: lattice models need n >= 1");
    auto finite = [](double v) { return std::isfinite(v); };
    if (const auto* is = std::get_if<IsingLongitudinal>(&model)) {
        if (!finite(is->Jz) || !finite(is->h))
            throw std::invalid_argument("ising: non-finite coupling");
    } else if (const auto* xxz = std::get_if<XXZ>(&model)) {
        if (!finite(xxz->Jx) || !finite(xxz->Jz))
            throw std::invalid_argument("xxz: non-finite coupling");
        if (graph.n > kDenseSolverLimit)
            throw std::invalid_argument("xxz: n above dense-solver limit (12)");
    } else if (const auto* fs = std::get_if<FreeSpins>(&model)) {
        if (!finite(fs->h))
            throw std::invalid_argument("free-spins: non-finite field");
    }
}

}  // namespace

Hamiltonian build_hamiltonian(const LatticeGraph& graph,
                              const ModelSpec& model) {
    validate_graph(graph);
    validate_model(graph, model);
    Hamiltonian h;
    h.graph = graph;
    h.model = model;
    h.diagonal = !std::holds_alternative<XXZ>(model);
    return h;
}

double bandwidth_bound(const Hamiltonian& h) {
    const double edges = static_cast<double>(h.graph.edges.size());
    if (const auto* is = std::get_if<IsingLongitudinal>(&h.model))
        return 2.0 * std::abs(is->Jz) * edges +
               2.0 * std::abs(is->h) * h.graph.n;
    if (const auto* xxz = std::get_if<XXZ>(&h.model))
        return 2.0 * (2.0 * std::abs(xxz->Jx) + std::abs(xxz->Jz)) * edges;
    if (const auto* fs = std::get_if<FreeSpins>(&h.model))
        return 2.0 * std::abs(fs->h) * h.graph.n;
    const auto& syn = std::get<Synthetic>(h.model);
    double lo = syn.levels.front().energy, hi = lo;
    for (const auto& lv : syn.levels) {
        lo = std::min(lo, lv.energy);
        hi = std::max(hi, lv.energy);
    }
    return hi - lo;
}

std::string model_name(const ModelSpec& m) {
    if (std::holds_alternative<IsingLongitudinal>(m)) return "ising";
    if (std::holds_alternative<XXZ>(m)) return "xxz";
    if (std::holds_alternative<FreeSpins>(m)) return "free_spins";
    return "synthetic";
}

}  // namespace spinspec
