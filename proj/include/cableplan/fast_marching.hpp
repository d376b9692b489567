#pragma once

// First-order fast marching on the triangulated surface. Vertex updates come
// from the planar-wavefront solve on each incident triangle when the
// characteristic passes through it, with the two-edge (Dijkstra-like) update
// as fallback; the fallback also covers obtuse corners, where the triangle
// condition never holds. Edge traversal cost is the trapezoid of the endpoint
// cable costs, matching the linear interpolation of f on the surface.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "cableplan/errors.hpp"
#include "cableplan/manifold.hpp"

namespace cableplan {

struct DistanceField {
    std::vector<std::size_t> source_ids;
    std::vector<double> value;                // min cumulative cost from nearest source
    std::vector<std::uint8_t> state;          // 1 = accepted
    std::vector<std::uint32_t> predecessor;   // accepted neighbor of the final update; self at sources
};

namespace detail {

inline double edge_cost(const Manifold& m, std::uint32_t a, std::uint32_t b) {
    return distance(m.vertices[a], m.vertices[b]) * 0.5 * (m.cable_cost[a] + m.cable_cost[b]);
}

// Planar update of T(c) from triangle (a, b, c) with T(a), T(b) accepted.
// Returns +inf when the characteristic misses the triangle.
inline double triangle_update(const Manifold& m, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                              double ta, double tb) {
    if (tb < ta) {
        std::swap(a, b);
        std::swap(ta, tb);
    }
    const Vec3 ea = m.vertices[a] - m.vertices[c];
    const Vec3 eb = m.vertices[b] - m.vertices[c];
    const double len_a = eb.norm();  // |bc|
    const double len_b = ea.norm();  // |ac|
    if (len_a <= 0.0 || len_b <= 0.0) return std::numeric_limits<double>::infinity();
    const double cos_theta = ea.dot(eb) / (len_a * len_b);
    const double sin2_theta = std::max(0.0, 1.0 - cos_theta * cos_theta);

    const double f = (m.cable_cost[a] + m.cable_cost[b] + m.cable_cost[c]) / 3.0;
    const double u = tb - ta;

    const double qa = len_a * len_a + len_b * len_b - 2.0 * len_a * len_b * cos_theta;
    const double qb = 2.0 * len_b * u * (len_a * cos_theta - len_b);
    const double qc = len_b * len_b * (u * u - f * f * len_a * len_a * sin2_theta);
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0 || qa <= 0.0) return std::numeric_limits<double>::infinity();

    // An obtuse corner at the updated vertex breaks the monotone condition;
    // the caller's edge update covers it.
    if (cos_theta < 0.0) return std::numeric_limits<double>::infinity();

    const double t = (-qb + std::sqrt(disc)) / (2.0 * qa);
    if (!(t > u)) return std::numeric_limits<double>::infinity();
    // Characteristic must enter through the (a, b) segment.
    const double ratio = len_b * (t - u) / t;
    if (ratio <= len_a * cos_theta) return std::numeric_limits<double>::infinity();
    if (cos_theta > 0.0 && ratio >= len_a / cos_theta)
        return std::numeric_limits<double>::infinity();
    return ta + t;
}

// Seeds exact chord distances in a small disk around a point source when the
// cable cost is uniform there. Plain one-point initialization pins the
// wavefront-curvature error near the source at a grid-independent level; the
// exact disk removes it, and chord times uniform cost never exceeds any path
// cost, so every ordering property of the solve is preserved.
inline void seed_source_disk(const Manifold& m, std::size_t source, int radius,
                             std::vector<double>& value,
                             std::vector<std::uint32_t>& predecessor,
                             std::vector<std::pair<double, std::uint32_t>>& seeds) {
    const auto sr = static_cast<long>(m.vertex_row(source));
    const auto sc = static_cast<long>(m.vertex_col(source));
    const double f = m.cable_cost[source];
    for (long dr = -radius; dr <= radius; ++dr) {
        for (long dc = -radius; dc <= radius; ++dc) {
            const long r = sr + dr, c = sc + dc;
            if (r < 0 || c < 0 || r >= static_cast<long>(m.rows) || c >= static_cast<long>(m.cols))
                continue;
            const std::size_t v = m.vertex_index(static_cast<std::size_t>(r),
                                                 static_cast<std::size_t>(c));
            if (std::abs(m.cable_cost[v] - f) > 1e-12 * (1.0 + f)) return;  // not uniform: skip
        }
    }
    seeds.clear();
    for (long dr = -radius; dr <= radius; ++dr) {
        for (long dc = -radius; dc <= radius; ++dc) {
            const long r = sr + dr, c = sc + dc;
            if (r < 0 || c < 0 || r >= static_cast<long>(m.rows) || c >= static_cast<long>(m.cols))
                continue;
            const std::size_t v = m.vertex_index(static_cast<std::size_t>(r),
                                                 static_cast<std::size_t>(c));
            if (v == source) continue;
            value[v] = f * distance(m.vertices[source], m.vertices[v]);
            predecessor[v] = static_cast<std::uint32_t>(source);
            seeds.emplace_back(value[v], static_cast<std::uint32_t>(v));
        }
    }
}

inline DistanceField fmm_solve_single(const Manifold& m, std::size_t source) {
    const std::size_t h = m.vertex_count();
    DistanceField field;
    field.source_ids = {source};
    field.value.assign(h, std::numeric_limits<double>::infinity());
    field.state.assign(h, 0);
    field.predecessor.resize(h);
    for (std::size_t v = 0; v < h; ++v) field.predecessor[v] = static_cast<std::uint32_t>(v);

    using Entry = std::pair<double, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    field.value[source] = 0.0;
    heap.emplace(0.0, static_cast<std::uint32_t>(source));
    std::vector<Entry> seeds;
    seed_source_disk(m, source, 3, field.value, field.predecessor, seeds);
    for (const Entry& e : seeds) heap.push(e);

#ifndef NDEBUG
    double last_accepted = 0.0;
#endif
    while (!heap.empty()) {
        const auto [val, v] = heap.top();
        heap.pop();
        if (field.state[v] || val != field.value[v]) continue;
        field.state[v] = 1;
#ifndef NDEBUG
        assert(val >= last_accepted - 1e-12 * (1.0 + last_accepted) && "heap monotonicity");
        last_accepted = val;
#endif
        for (std::uint32_t k = m.vert_tri_offset[v]; k < m.vert_tri_offset[v + 1]; ++k) {
            const auto& tri = m.triangles[m.vert_tri_index[k]];
            for (int i = 0; i < 3; ++i) {
                const std::uint32_t u = tri[i];
                if (u == v || field.state[u]) continue;
                const std::uint32_t w = tri[0] ^ tri[1] ^ tri[2] ^ v ^ u;  // third vertex
                double cand = field.value[v] + edge_cost(m, v, u);
                std::uint32_t pred = v;
                if (field.state[w]) {
                    const double face =
                        triangle_update(m, v, w, u, field.value[v], field.value[w]);
                    if (face < cand) {
                        cand = face;
                        pred = field.value[w] < field.value[v] ? w : v;
                    }
                }
                if (cand < field.value[u]) {
                    field.value[u] = cand;
                    field.predecessor[u] = pred;
                    heap.emplace(cand, u);
                }
            }
        }
    }
    return field;
}

}  // namespace detail

/// Solves the weighted Eikonal problem from a set of zero-cost sources. The
/// multi-source field is the pointwise minimum of the single-source fields,
/// which also defines its backtrace data; ties go to the earlier source.
inline DistanceField fmm_solve(const Manifold& m, const std::vector<std::size_t>& sources) {
    if (sources.empty()) throw InputError("fmm_solve: source set is empty");
    std::vector<std::size_t> uniq = sources;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (std::size_t s : uniq)
        if (s >= m.vertex_count())
            throw InputError("fmm_solve: source vertex " + std::to_string(s) + " out of range");

    DistanceField combined = detail::fmm_solve_single(m, uniq[0]);
    for (std::size_t i = 1; i < uniq.size(); ++i) {
        const DistanceField single = detail::fmm_solve_single(m, uniq[i]);
        for (std::size_t v = 0; v < m.vertex_count(); ++v) {
            if (single.value[v] < combined.value[v]) {
                combined.value[v] = single.value[v];
                combined.predecessor[v] = single.predecessor[v];
            }
        }
    }
    combined.source_ids = uniq;
    return combined;
}

}  // namespace cableplan
