#pragma once

// Full Steiner topologies over N terminals, their rooted skeleton trees, and
// the merge bookkeeping that turns coincident 3-branch nodes into a single
// higher-degree branching unit.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cableplan/errors.hpp"

namespace cableplan {

/// Tree over terminal indices 0..N-1 and Steiner indices 0..M-1 where every
/// Steiner node has degree 3 and every terminal degree 1 (full topology,
/// M = N-2).
struct SteinerTopology {
    int n_terminals = 0;
    int n_steiner = 0;
    std::vector<std::pair<int, int>> edges_e1;  // (terminal, steiner)
    std::vector<std::pair<int, int>> edges_e2;  // (steiner, steiner), lower id first
};

/// Debug dump: E1 edges sorted by terminal, then E2 edges sorted, 1-based
/// labels, e.g. "t1-s1,t2-s1,t3-s2,t4-s2,s1-s2".
inline std::string topology_to_line(const SteinerTopology& t) {
    auto e1 = t.edges_e1;
    auto e2 = t.edges_e2;
    std::sort(e1.begin(), e1.end());
    std::sort(e2.begin(), e2.end());
    std::string out;
    for (const auto& [term, st] : e1) {
        if (!out.empty()) out += ',';
        out += "t" + std::to_string(term + 1) + "-s" + std::to_string(st + 1);
    }
    for (const auto& [a, b] : e2) {
        if (!out.empty()) out += ',';
        out += "s" + std::to_string(a + 1) + "-s" + std::to_string(b + 1);
    }
    return out;
}

/// Streams every full Steiner topology on n_terminals exactly once, by the
/// classical construction: terminal k+1 is inserted into each edge of each
/// topology on k terminals, giving (2N-5)!! trees in a fixed order. The
/// visitor returns false to stop early.
inline void enumerate_full_topologies(int n_terminals,
                                      const std::function<bool(const SteinerTopology&)>& visit) {
    if (n_terminals < 3)
        throw InputError("enumerate_full_topologies: need at least 3 terminals (got " +
                         std::to_string(n_terminals) + ")");

    SteinerTopology t;
    t.n_terminals = n_terminals;
    t.n_steiner = 1;
    t.edges_e1 = {{0, 0}, {1, 0}, {2, 0}};

    bool keep_going = true;
    std::function<void(int)> grow = [&](int next_terminal) {
        if (!keep_going) return;
        if (next_terminal == n_terminals) {
            keep_going = visit(t);
            return;
        }
        const int s_new = t.n_steiner;
        t.n_steiner = s_new + 1;
        // Split each terminal-to-Steiner edge.
        const std::size_t e1_count = t.edges_e1.size();
        for (std::size_t i = 0; i < e1_count && keep_going; ++i) {
            const auto [term, st] = t.edges_e1[i];
            t.edges_e1[i] = {term, s_new};
            t.edges_e1.push_back({next_terminal, s_new});
            t.edges_e2.push_back({std::min(st, s_new), std::max(st, s_new)});
            grow(next_terminal + 1);
            t.edges_e2.pop_back();
            t.edges_e1.pop_back();
            t.edges_e1[i] = {term, st};
        }
        // Split each Steiner-to-Steiner edge.
        const std::size_t e2_count = t.edges_e2.size();
        for (std::size_t i = 0; i < e2_count && keep_going; ++i) {
            const auto [a, b] = t.edges_e2[i];
            t.edges_e2[i] = {std::min(a, s_new), std::max(a, s_new)};
            t.edges_e2.push_back({std::min(b, s_new), std::max(b, s_new)});
            t.edges_e1.push_back({next_terminal, s_new});
            grow(next_terminal + 1);
            t.edges_e1.pop_back();
            t.edges_e2.pop_back();
            t.edges_e2[i] = {a, b};
        }
        t.n_steiner = s_new;
    };
    grow(3);
}

/// Skeleton of a topology: the Steiner-only subtree, rooted and ordered so
/// children always precede their parent (the root is last).
struct SkeletonTree {
    int root = 0;
    std::vector<int> parent;                 // -1 at the root
    std::vector<std::vector<int>> children;  // ascending
    std::vector<int> order;                  // post-order, ties by ascending index
};

inline SkeletonTree build_skeleton(const SteinerTopology& t, int root) {
    if (root < 0 || root >= t.n_steiner)
        throw InputError("build_skeleton: root " + std::to_string(root) +
                         " is not a Steiner node index");
    std::vector<std::vector<int>> adj(t.n_steiner);
    for (const auto& [a, b] : t.edges_e2) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

    SkeletonTree sk;
    sk.root = root;
    sk.parent.assign(t.n_steiner, -1);
    sk.children.assign(t.n_steiner, {});
    sk.order.reserve(t.n_steiner);
    std::function<void(int, int)> dfs = [&](int node, int from) {
        for (int nbr : adj[node]) {
            if (nbr == from) continue;
            sk.parent[nbr] = node;
            sk.children[node].push_back(nbr);
            dfs(nbr, node);
        }
        sk.order.push_back(node);
    };
    dfs(root, -1);
    if (static_cast<int>(sk.order.size()) != t.n_steiner)
        throw InputError("build_skeleton: skeleton edges do not connect all Steiner nodes");
    return sk;
}

/// Coincidence groups of a placement: connected components of the skeleton
/// edges whose endpoints landed on the same grid vertex. A group of k
/// 3-branch nodes acts as one (k+2)-branch unit.
struct MergedNetwork {
    std::vector<std::vector<int>> groups;  // member ids ascending; groups by smallest member
    std::vector<int> branch_count;         // per group, members + 2
};

inline MergedNetwork merge_coincident(const std::vector<std::size_t>& placements,
                                      const SteinerTopology& t) {
    if (static_cast<int>(placements.size()) != t.n_steiner)
        throw InputError("merge_coincident: placements must cover every Steiner node");
    std::vector<int> rep(t.n_steiner);
    for (int i = 0; i < t.n_steiner; ++i) rep[i] = i;
    std::function<int(int)> find = [&](int i) {
        while (rep[i] != i) i = rep[i] = rep[rep[i]];
        return i;
    };
    for (const auto& [a, b] : t.edges_e2) {
        if (placements[a] == placements[b]) {
            const int ra = find(a), rb = find(b);
            rep[std::max(ra, rb)] = std::min(ra, rb);
        }
    }
    std::map<int, std::vector<int>> by_rep;
    for (int i = 0; i < t.n_steiner; ++i) by_rep[find(i)].push_back(i);

    MergedNetwork out;
    for (auto& [r, members] : by_rep) {
        out.branch_count.push_back(static_cast<int>(members.size()) + 2);
        out.groups.push_back(std::move(members));
    }
    return out;
}

}  // namespace cableplan
