#pragma once

// Network solver: region-to-grid distance records, the least-cost-system
// dynamic program over the skeleton DAG with per-vertex branching-unit
// charges, and the outer minimization across Steiner topologies.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "cableplan/cost_matrix.hpp"
#include "cableplan/errors.hpp"
#include "cableplan/fast_marching.hpp"
#include "cableplan/geodesic.hpp"
#include "cableplan/manifold.hpp"
#include "cableplan/topology.hpp"

namespace cableplan {

enum class BranchMode { merge_allowed, three_branch_only };

inline const char* to_string(BranchMode mode) {
    return mode == BranchMode::merge_allowed ? "merge_allowed" : "three_branch_only";
}

/// Destination region: candidate landing-station vertices with their
/// per-site construction costs.
struct RegionSpec {
    std::string name;
    struct Candidate {
        std::size_t vertex = 0;
        double station_cost = 0.0;
    };
    std::vector<Candidate> candidates;
};

/// Per-grid-vertex best way to reach a region: min over candidates of
/// geodesic cost plus station cost, and the pointer to the winning candidate.
struct RegionDistance {
    std::vector<double> values;
    std::vector<std::uint32_t> pointer;  // candidate index, ties to the lowest
};

/// Memoizes single-source distance fields so repeated solves against the
/// same immutable manifold are free.
class FieldCache {
public:
    explicit FieldCache(const Manifold& m) : m_(&m) {}

    const DistanceField& field(std::size_t source) {
        auto it = fields_.find(source);
        if (it == fields_.end())
            it = fields_.emplace(source, detail::fmm_solve_single(*m_, source)).first;
        return it->second;
    }

    const Manifold& manifold() const { return *m_; }

private:
    const Manifold* m_;
    std::map<std::size_t, DistanceField> fields_;
};

inline RegionDistance region_distance(const Manifold& m, FieldCache& cache, const RegionSpec& r) {
    if (r.candidates.empty())
        throw InputError("region '" + r.name + "' has no candidate stations");
    const std::size_t h = m.vertex_count();
    RegionDistance rd;
    rd.values.assign(h, std::numeric_limits<double>::infinity());
    rd.pointer.assign(h, 0);
    for (std::size_t l = 0; l < r.candidates.size(); ++l) {
        const auto& cand = r.candidates[l];
        if (cand.vertex >= h)
            throw InputError("region '" + r.name + "' candidate " + std::to_string(l + 1) +
                             " references vertex " + std::to_string(cand.vertex) + " out of range");
        if (!(cand.station_cost >= 0.0) || !std::isfinite(cand.station_cost))
            throw InputError("region '" + r.name + "' candidate " + std::to_string(l + 1) +
                             " has an invalid station cost");
        const DistanceField& f = cache.field(cand.vertex);
        for (std::size_t j = 0; j < h; ++j) {
            const double v = f.value[j] + cand.station_cost;
            if (v < rd.values[j]) {
                rd.values[j] = v;
                rd.pointer[j] = static_cast<std::uint32_t>(l);
            }
        }
    }
    return rd;
}

/// Per-Steiner-node sum of the region distance records of its adjacent
/// regions; zero where no region is adjacent.
inline std::vector<std::vector<double>> terminal_barc(const SteinerTopology& t,
                                                      const std::vector<RegionDistance>& region_dists,
                                                      std::size_t h) {
    std::vector<std::vector<double>> cbar(t.n_steiner, std::vector<double>(h, 0.0));
    for (const auto& [term, st] : t.edges_e1) {
        const auto& d = region_dists[term].values;
        auto& row = cbar[st];
        for (std::size_t j = 0; j < h; ++j) row[j] += d[j];
    }
    return cbar;
}

/// Vertices where a branching unit costs nothing: the pointer of some region
/// selects a candidate located exactly there, i.e. the BU would sit inside a
/// landing station. This matches the rule that a Steiner node coinciding
/// with a terminal needs no BU, and keeps the charge a function of the vertex
/// alone so the DP objective cannot depend on the skeleton root.
inline std::vector<char> station_coincidence_flags(const std::vector<RegionSpec>& regions,
                                                   const std::vector<RegionDistance>& region_dists,
                                                   std::size_t h) {
    std::vector<char> zero(h, 0);
    for (std::size_t l = 0; l < regions.size(); ++l) {
        const auto& rd = region_dists[l];
        for (std::size_t q = 0; q < h; ++q)
            if (regions[l].candidates[rd.pointer[q]].vertex == q) zero[q] = 1;
    }
    return zero;
}

inline std::vector<double> effective_bu_charges(const Manifold& m, const std::vector<char>& zero) {
    std::vector<double> ebu(m.vertex_count());
    for (std::size_t q = 0; q < m.vertex_count(); ++q) ebu[q] = zero[q] ? 0.0 : m.bu_cost[q];
    return ebu;
}

/// Total cost of a fixed placement tuple, accumulated in a canonical order
/// (node ids, then sorted skeleton edges, then charges). With a symmetric
/// cost matrix the value is bit-identical for every skeleton root, which is
/// what makes root invariance of the solve exact rather than approximate.
inline double placement_cost(const SkeletonTree& sk, const std::vector<std::vector<double>>& cbar,
                             const CostMatrix& w, const std::vector<double>& effective_bu,
                             BranchMode mode, const std::vector<std::size_t>& placement) {
    const int m_nodes = static_cast<int>(sk.order.size());
    double cost = 0.0;
    for (int i = 0; i < m_nodes; ++i) cost += cbar[i][placement[i]];

    std::vector<std::pair<int, int>> edges;
    edges.reserve(m_nodes > 0 ? m_nodes - 1 : 0);
    for (int i = 0; i < m_nodes; ++i)
        if (sk.parent[i] >= 0) edges.emplace_back(std::min(i, sk.parent[i]), std::max(i, sk.parent[i]));
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges) cost += w.at(placement[a], placement[b]);

    if (mode == BranchMode::three_branch_only) {
        for (int i = 0; i < m_nodes; ++i) cost += effective_bu[placement[i]];
    } else {
        // One charge per coincidence group, at the group's vertex.
        std::vector<int> rep(m_nodes);
        for (int i = 0; i < m_nodes; ++i) rep[i] = i;
        std::function<int(int)> find = [&rep](int i) {
            while (rep[i] != i) i = rep[i] = rep[rep[i]];
            return i;
        };
        for (const auto& [a, b] : edges) {
            if (placement[a] == placement[b]) {
                const int ra = find(a), rb = find(b);
                rep[std::max(ra, rb)] = std::min(ra, rb);
            }
        }
        for (int i = 0; i < m_nodes; ++i)
            if (find(i) == i) cost += effective_bu[placement[i]];
    }
    return cost;
}

struct DpTables {
    std::vector<std::vector<double>> phi;       // per Steiner node, per vertex MCC
    std::vector<std::vector<std::uint32_t>> pi;  // per child node, per parent vertex: chosen q
};

struct DpResult {
    double objective = std::numeric_limits<double>::infinity();
    std::size_t root_vertex = 0;
    std::vector<std::size_t> placements;  // per Steiner node id
    DpTables tables;
};

/// Bottom-up least-cost-system DP. Each child relaxation pays the child's BU
/// charge, except that a child coinciding with its parent merges for free in
/// merge_allowed mode (the combined unit is charged once, at the top of the
/// coincidence group); the root's charge joins the final argmin. Ties always
/// go to the lowest vertex index.
inline DpResult dp_least_cost_system(const SkeletonTree& sk,
                                     const std::vector<std::vector<double>>& cbar,
                                     const CostMatrix& w, const std::vector<double>& effective_bu,
                                     BranchMode mode) {
    const std::size_t h = w.h;
    const int m_nodes = static_cast<int>(sk.order.size());
    if (static_cast<int>(cbar.size()) != m_nodes || effective_bu.size() != h)
        throw InternalError("dp_least_cost_system: table sizes are inconsistent");
    for (const auto& row : cbar)
        if (row.size() != h) throw InternalError("dp_least_cost_system: cbar width != vertex count");

    DpResult res;
    res.tables.phi.assign(m_nodes, {});
    res.tables.pi.assign(m_nodes, {});

    std::vector<double> best(h);
    std::vector<std::uint32_t> best_q(h);
    for (int i : sk.order) {
        auto& phi_i = res.tables.phi[i];
        phi_i = cbar[i];
        for (int j : sk.children[i]) {
            const auto& phi_j = res.tables.phi[j];
            std::fill(best.begin(), best.end(), std::numeric_limits<double>::infinity());
            std::fill(best_q.begin(), best_q.end(), 0u);
            for (std::size_t q = 0; q < h; ++q) {
                const double base = phi_j[q] + effective_bu[q];
                const double* w_row = w.row(q);
                for (std::size_t p = 0; p < h; ++p) {
                    const double v = base + w_row[p];
                    if (v < best[p]) {
                        best[p] = v;
                        best_q[p] = static_cast<std::uint32_t>(q);
                    }
                }
            }
            if (mode == BranchMode::merge_allowed) {
                for (std::size_t p = 0; p < h; ++p) {
                    const double v = phi_j[p];  // coincident with parent: merges, no charge here
                    if (v < best[p] || (v == best[p] && p < best_q[p])) {
                        best[p] = v;
                        best_q[p] = static_cast<std::uint32_t>(p);
                    }
                }
            }
            for (std::size_t p = 0; p < h; ++p) phi_i[p] += best[p];
            res.tables.pi[j] = best_q;
        }
    }

    const auto& phi_root = res.tables.phi[sk.root];
    double best_root = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < h; ++p) {
        const double v = phi_root[p] + effective_bu[p];
        if (v < best_root) {
            best_root = v;
            res.root_vertex = p;
        }
    }

    res.placements.assign(m_nodes, 0);
    res.placements[sk.root] = res.root_vertex;
    std::function<void(int)> trace = [&](int i) {
        for (int j : sk.children[i]) {
            res.placements[j] = res.tables.pi[j][res.placements[i]];
            trace(j);
        }
    };
    trace(sk.root);
    // Report the canonically accumulated cost of the selected placements so
    // the objective does not inherit the root's summation order.
    res.objective = placement_cost(sk, cbar, w, effective_bu, mode, res.placements);
    return res;
}

struct StationChoice {
    std::string region_name;
    std::uint32_t candidate_index = 0;  // 0-based
    std::size_t vertex = 0;
    double station_cost = 0.0;
};

struct BuGroup {
    std::vector<int> members;  // Steiner node ids
    std::size_t vertex = 0;
    int branch_count = 3;
    double charged_cost = 0.0;
    bool at_station = false;
};

struct SolutionEdge {
    std::string from_label;  // "s<k>"
    std::string to_label;    // "s<k>" or region name
    int region = -1;         // region index for station edges
    GeodesicPath path;
};

struct CostBreakdown {
    double cable = 0.0;
    double bu = 0.0;
    double stations = 0.0;
    double total = 0.0;
};

struct NetworkSolution {
    BranchMode mode = BranchMode::merge_allowed;
    SteinerTopology topology;  // n_steiner == 0 for the two-region fast path
    std::vector<std::size_t> steiner_vertices;
    MergedNetwork merged;
    std::vector<BuGroup> bu_groups;
    std::vector<StationChoice> chosen_station;
    std::vector<SolutionEdge> edge_paths;
    CostBreakdown cost_breakdown;
    double total_length = 0.0;
    double dp_objective = 0.0;
    std::size_t topologies_evaluated = 0;
    std::size_t topologies_pruned = 0;
};

struct SolveOptions {
    BranchMode mode = BranchMode::merge_allowed;
    unsigned threads = 1;
    std::size_t max_pairs_vertices = 4096;
    double seed_incumbent = std::numeric_limits<double>::infinity();
    const CostMatrix* pairs = nullptr;  // reuse a precomputed all-pairs matrix
    FieldCache* field_cache = nullptr;  // reuse distance fields across calls
    std::ostream* log = nullptr;
};

namespace detail {

inline GeodesicPath degenerate_path(const Manifold& m, std::size_t vertex) {
    GeodesicPath p;
    p.points.push_back(m.vertices[vertex]);
    return p;
}

inline int charged_group_count(const NetworkSolution& sol) {
    int n = 0;
    for (const auto& g : sol.bu_groups)
        if (!g.at_station) ++n;
    return n;
}

}  // namespace detail

inline NetworkSolution solve_network(const Manifold& m, const std::vector<RegionSpec>& regions,
                                     const SolveOptions& options = {}) {
    const std::size_t n = regions.size();
    if (n < 2) throw InputError("solve_network: need at least 2 regions (got " + std::to_string(n) + ")");
    const std::size_t h = m.vertex_count();

    FieldCache local_cache(m);
    FieldCache& cache = options.field_cache ? *options.field_cache : local_cache;

    NetworkSolution sol;
    sol.mode = options.mode;

    if (n == 2) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_l1 = 0, best_l2 = 0;
        for (std::size_t l1 = 0; l1 < regions[0].candidates.size(); ++l1) {
            const auto& c1 = regions[0].candidates[l1];
            if (c1.vertex >= h) throw InputError("region '" + regions[0].name + "' candidate out of range");
            const DistanceField& f = cache.field(c1.vertex);
            for (std::size_t l2 = 0; l2 < regions[1].candidates.size(); ++l2) {
                const auto& c2 = regions[1].candidates[l2];
                if (c2.vertex >= h)
                    throw InputError("region '" + regions[1].name + "' candidate out of range");
                const double v = f.value[c2.vertex] + c1.station_cost + c2.station_cost;
                if (v < best) {
                    best = v;
                    best_l1 = l1;
                    best_l2 = l2;
                }
            }
        }
        const auto& c1 = regions[0].candidates[best_l1];
        const auto& c2 = regions[1].candidates[best_l2];
        sol.dp_objective = best;
        sol.chosen_station.push_back({regions[0].name, static_cast<std::uint32_t>(best_l1), c1.vertex,
                                      c1.station_cost});
        sol.chosen_station.push_back({regions[1].name, static_cast<std::uint32_t>(best_l2), c2.vertex,
                                      c2.station_cost});
        SolutionEdge e;
        e.from_label = regions[1].name;
        e.to_label = regions[0].name;
        e.region = 1;
        e.path = c1.vertex == c2.vertex ? detail::degenerate_path(m, c1.vertex)
                                        : trace_geodesic(cache.field(c1.vertex), m, c2.vertex);
        sol.edge_paths.push_back(std::move(e));
        sol.cost_breakdown.cable = sol.edge_paths[0].path.cost;
        sol.cost_breakdown.stations = c1.station_cost + c2.station_cost;
        sol.cost_breakdown.total = sol.cost_breakdown.cable + sol.cost_breakdown.stations;
        sol.total_length = sol.edge_paths[0].path.length;
        return sol;
    }

    // Region-to-grid distance records and the per-vertex BU charge field.
    std::vector<RegionDistance> region_dists;
    region_dists.reserve(n);
    for (const auto& r : regions) region_dists.push_back(region_distance(m, cache, r));
    const std::vector<char> zero_flags = station_coincidence_flags(regions, region_dists, h);
    const std::vector<double> ebu = effective_bu_charges(m, zero_flags);

    // The DP consumes the symmetrized matrix: a cable between two vertices
    // costs the same in both directions, and a direction-free w keeps the
    // objective independent of the skeleton root.
    CostMatrix pairs_sym;
    if (options.pairs) {
        if (options.pairs->h != h)
            throw InternalError("solve_network: supplied pairs matrix has wrong size");
        pairs_sym = symmetrized(*options.pairs);
    } else {
        pairs_sym = symmetrized(all_pairs_costs(m, options.max_pairs_vertices, options.threads));
    }
    const CostMatrix* pairs = &pairs_sym;

    double incumbent = options.seed_incumbent;
    bool found = false;
    SteinerTopology best_topo;
    SkeletonTree best_sk;
    DpResult best_dp;

    enumerate_full_topologies(static_cast<int>(n), [&](const SteinerTopology& t) {
        ++sol.topologies_evaluated;
        const auto cbar = terminal_barc(t, region_dists, h);
        double lower_bound = 0.0;
        for (const auto& row : cbar) lower_bound += *std::min_element(row.begin(), row.end());
        if (lower_bound >= incumbent) {
            ++sol.topologies_pruned;
            if (options.log)
                *options.log << "topology=" << topology_to_line(t) << " status=pruned lb="
                             << lower_bound << " incumbent=" << incumbent << "\n";
            return true;
        }
        const SkeletonTree sk = build_skeleton(t, t.n_steiner - 1);
        DpResult dp = dp_least_cost_system(sk, cbar, *pairs, ebu, options.mode);
        const bool improved = dp.objective < incumbent;
        if (options.log)
            *options.log << "topology=" << topology_to_line(t) << " status="
                         << (improved ? "incumbent" : "evaluated") << " objective=" << dp.objective
                         << " incumbent=" << (improved ? dp.objective : incumbent) << "\n";
        if (improved) {
            incumbent = dp.objective;
            best_topo = t;
            best_sk = sk;
            best_dp = std::move(dp);
            found = true;
        }
        return true;
    });
    if (!found)
        throw InputError("solve_network: every topology was pruned by the seed incumbent " +
                         std::to_string(options.seed_incumbent) + "; lower or drop the seed");

    sol.topology = best_topo;
    sol.steiner_vertices = best_dp.placements;
    sol.dp_objective = best_dp.objective;

    if (options.mode == BranchMode::merge_allowed) {
        sol.merged = merge_coincident(best_dp.placements, best_topo);
    } else {
        for (int i = 0; i < best_topo.n_steiner; ++i) {
            sol.merged.groups.push_back({i});
            sol.merged.branch_count.push_back(3);
        }
    }
    for (std::size_t g = 0; g < sol.merged.groups.size(); ++g) {
        BuGroup group;
        group.members = sol.merged.groups[g];
        group.branch_count = sol.merged.branch_count[g];
        group.vertex = best_dp.placements[group.members.front()];
        group.at_station = zero_flags[group.vertex] != 0;
        group.charged_cost = group.at_station ? 0.0 : m.bu_cost[group.vertex];
        sol.bu_groups.push_back(std::move(group));
    }

    // Station choices are read off each region's pointer at its attachment vertex.
    std::vector<int> attach(n, -1);
    for (const auto& [term, st] : best_topo.edges_e1) attach[term] = st;
    for (std::size_t l = 0; l < n; ++l) {
        const std::size_t attach_vertex = best_dp.placements[attach[l]];
        const std::uint32_t cand_idx = region_dists[l].pointer[attach_vertex];
        const auto& cand = regions[l].candidates[cand_idx];
        sol.chosen_station.push_back({regions[l].name, cand_idx, cand.vertex, cand.station_cost});
    }

    // Geodesics: station-to-Steiner edges first (by region), then the skeleton edges.
    for (std::size_t l = 0; l < n; ++l) {
        const std::size_t sv = best_dp.placements[attach[l]];
        const std::size_t station_vertex = sol.chosen_station[l].vertex;
        SolutionEdge e;
        e.from_label = "s" + std::to_string(attach[l] + 1);
        e.to_label = regions[l].name;
        e.region = static_cast<int>(l);
        e.path = sv == station_vertex ? detail::degenerate_path(m, sv)
                                      : trace_geodesic(cache.field(station_vertex), m, sv);
        sol.edge_paths.push_back(std::move(e));
    }
    auto e2_sorted = best_topo.edges_e2;
    std::sort(e2_sorted.begin(), e2_sorted.end());
    for (const auto& [a, b] : e2_sorted) {
        const std::size_t va = best_dp.placements[a];
        const std::size_t vb = best_dp.placements[b];
        SolutionEdge e;
        e.from_label = "s" + std::to_string(b + 1);
        e.to_label = "s" + std::to_string(a + 1);
        e.path = va == vb ? detail::degenerate_path(m, va) : trace_geodesic(cache.field(va), m, vb);
        sol.edge_paths.push_back(std::move(e));
    }

    for (const auto& e : sol.edge_paths) {
        sol.cost_breakdown.cable += e.path.cost;
        sol.total_length += e.path.length;
    }
    for (const auto& g : sol.bu_groups) sol.cost_breakdown.bu += g.charged_cost;
    for (const auto& s : sol.chosen_station) sol.cost_breakdown.stations += s.station_cost;
    sol.cost_breakdown.total =
        sol.cost_breakdown.cable + sol.cost_breakdown.bu + sol.cost_breakdown.stations;
    return sol;
}

/// Re-derives the cost breakdown from the stored polylines and charges and
/// cross-checks it against the DP objective.
inline CostBreakdown evaluate_solution(const NetworkSolution& sol, const Manifold& m,
                                       double tolerance = 0.03) {
    if (sol.edge_paths.empty()) throw InputError("evaluate_solution: solution has no edge paths");
    CostBreakdown out;
    for (const auto& e : sol.edge_paths) {
        double cost = 0.0;
        const auto& pts = e.path.points;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const double seg = distance(pts[i], pts[i + 1]);
            cost += seg * 0.5 *
                    (detail::cable_cost_at(m, pts[i]) + detail::cable_cost_at(m, pts[i + 1]));
        }
        out.cable += cost;
    }
    for (const auto& g : sol.bu_groups) out.bu += g.at_station ? 0.0 : m.bu_cost[g.vertex];
    for (const auto& s : sol.chosen_station) out.stations += s.station_cost;
    out.total = out.cable + out.bu + out.stations;

    const double scale = std::max({1.0, std::abs(out.total), std::abs(sol.dp_objective)});
    if (std::abs(out.total - sol.dp_objective) > tolerance * scale)
        throw ConsistencyError("evaluate_solution: re-integrated total " + std::to_string(out.total) +
                               " deviates from DP objective " + std::to_string(sol.dp_objective) +
                               " by more than " + std::to_string(tolerance * 100.0) + "%");
    return out;
}

}  // namespace cableplan
