#pragma once

// Brute-force references for tests: exhaustive Steiner placement scan and
// edge-restricted Dijkstra. Never on the solve path.

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "cableplan/cost_matrix.hpp"
#include "cableplan/errors.hpp"
#include "cableplan/manifold.hpp"
#include "cableplan/solver.hpp"
#include "cableplan/topology.hpp"

namespace cableplan {

struct OracleResult {
    double objective = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> placements;
    std::size_t enumerated_count = 0;
};

/// Cost of one fixed placement tuple. The accumulation mirrors the DP's
/// order of operations exactly, so minima agree bitwise with the solver.
inline double evaluate_placement(const SkeletonTree& sk,
                                 const std::vector<std::vector<double>>& cbar, const CostMatrix& w,
                                 const std::vector<double>& effective_bu, BranchMode mode,
                                 const std::vector<std::size_t>& placement) {
    std::vector<double> val(sk.order.size(), 0.0);
    for (int i : sk.order) {
        double v = cbar[i][placement[i]];
        for (int j : sk.children[i]) {
            const std::size_t q = placement[j];
            if (mode == BranchMode::merge_allowed && q == placement[i])
                v += val[j];
            else
                v += (val[j] + effective_bu[q]) + w.at(q, placement[i]);
        }
        val[i] = v;
    }
    return val[sk.root] + effective_bu[placement[sk.root]];
}

/// Exhaustive scan over all vertex^M placements with the solver's charging
/// rule and tie-breaking: tuples are enumerated root-first down the skeleton
/// with lower vertex indices first, so the first strict minimum is the same
/// tuple the DP traceback selects, and the reported objective is the same
/// canonically accumulated cost. Refuses instances beyond the ceiling.
inline OracleResult brute_force_placements(const SkeletonTree& sk,
                                           const std::vector<std::vector<double>>& cbar,
                                           const CostMatrix& w,
                                           const std::vector<double>& effective_bu, BranchMode mode,
                                           std::size_t max_evals = 10'000'000) {
    const std::size_t h = w.h;
    const std::size_t m_nodes = sk.order.size();
    double total = 1.0;
    for (std::size_t i = 0; i < m_nodes; ++i) total *= static_cast<double>(h);
    if (total > static_cast<double>(max_evals))
        throw InputError("brute_force_placements: " + std::to_string(h) + "^" +
                         std::to_string(m_nodes) + " = " + std::to_string(total) +
                         " placements exceeds the ceiling of " + std::to_string(max_evals));

    // Coordinate significance: root varies slowest, then down the tree.
    std::vector<int> coords(sk.order.rbegin(), sk.order.rend());

    OracleResult res;
    double best_stream = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> placement(m_nodes, 0);
    while (true) {
        const double v = evaluate_placement(sk, cbar, w, effective_bu, mode, placement);
        ++res.enumerated_count;
        if (v < best_stream) {
            best_stream = v;
            res.placements = placement;
        }
        std::size_t k = m_nodes;
        while (k > 0) {
            if (++placement[coords[k - 1]] < h) break;
            placement[coords[k - 1]] = 0;
            --k;
        }
        if (k == 0) break;
    }
    res.objective = placement_cost(sk, cbar, w, effective_bu, mode, res.placements);
    return res;
}

/// Shortest paths restricted to mesh edges, each edge costing its length
/// times the mean endpoint cable cost. Face shortcuts make fast marching
/// values at most these, up to discretization tolerance.
inline std::vector<double> dijkstra_edges(const Manifold& m, std::size_t source) {
    if (source >= m.vertex_count())
        throw InputError("dijkstra_edges: source vertex out of range");
    const std::size_t h = m.vertex_count();
    std::vector<double> dist(h, std::numeric_limits<double>::infinity());
    std::vector<std::uint8_t> done(h, 0);
    using Entry = std::pair<double, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, static_cast<std::uint32_t>(source));
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (done[v]) continue;
        done[v] = 1;
        for (std::uint32_t k = m.vert_tri_offset[v]; k < m.vert_tri_offset[v + 1]; ++k) {
            for (std::uint32_t u : m.triangles[m.vert_tri_index[k]]) {
                if (u == v || done[u]) continue;
                const double cand = d + distance(m.vertices[v], m.vertices[u]) * 0.5 *
                                            (m.cable_cost[v] + m.cable_cost[u]);
                if (cand < dist[u]) {
                    dist[u] = cand;
                    heap.emplace(cand, u);
                }
            }
        }
    }
    return dist;
}

}  // namespace cableplan
