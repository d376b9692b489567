#pragma once

// Gradient-descent backtrace through triangle interiors on a solved distance
// field, with a predecessor-hop fallback for flat or oscillating spots.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cableplan/errors.hpp"
#include "cableplan/fast_marching.hpp"
#include "cableplan/manifold.hpp"

namespace cableplan {

struct GeodesicPath {
    std::vector<Vec3> points;  // target first, source last
    double cost = 0.0;         // line integral of interpolated cable cost
    double length = 0.0;       // 3D arc length in meters
};

namespace detail {

struct TrianglePoint {
    std::size_t v0, v1, v2;   // vertex indices of the containing triangle
    double w0, w1, w2;        // barycentric weights
};

inline TrianglePoint locate(const Manifold& m, double x, double y) {
    const double eps = 1e-12;
    double fc = (x - m.x0) / m.cell_size;
    double fr = (y - m.y0) / m.cell_size;
    fc = std::clamp(fc, 0.0, static_cast<double>(m.cols - 1) - eps);
    fr = std::clamp(fr, 0.0, static_cast<double>(m.rows - 1) - eps);
    const auto c = static_cast<std::size_t>(fc);
    const auto r = static_cast<std::size_t>(fr);
    const double u = fc - static_cast<double>(c);
    const double v = fr - static_cast<double>(r);

    const std::size_t v00 = m.vertex_index(r, c);
    const std::size_t v10 = m.vertex_index(r, c + 1);
    const std::size_t v01 = m.vertex_index(r + 1, c);
    const std::size_t v11 = m.vertex_index(r + 1, c + 1);
    // Cells are split along the v00-v11 diagonal.
    if (v <= u) return {v00, v10, v11, 1.0 - u, u - v, v};
    return {v00, v11, v01, 1.0 - v, u, v - u};
}

inline double interpolate(const std::vector<double>& field, const TrianglePoint& tp) {
    return tp.w0 * field[tp.v0] + tp.w1 * field[tp.v1] + tp.w2 * field[tp.v2];
}

// Central-difference gradient of the piecewise-linear interpolant. Sampling
// across triangle boundaries smooths the per-face kinks that would otherwise
// zigzag the descent.
inline Vec2 sampled_gradient(const Manifold& m, const std::vector<double>& field, double x,
                             double y, double delta) {
    auto at = [&](double px, double py) { return interpolate(field, locate(m, px, py)); };
    return {(at(x + delta, y) - at(x - delta, y)) / (2.0 * delta),
            (at(x, y + delta) - at(x, y - delta)) / (2.0 * delta)};
}

inline Vec3 surface_point(const Manifold& m, double x, double y) {
    const TrianglePoint tp = locate(m, x, y);
    const double z = tp.w0 * m.vertices[tp.v0].z + tp.w1 * m.vertices[tp.v1].z +
                     tp.w2 * m.vertices[tp.v2].z;
    return {x, y, z};
}

inline double cable_cost_at(const Manifold& m, const Vec3& p) {
    return interpolate(m.cable_cost, locate(m, p.x, p.y));
}

}  // namespace detail

/// Trapezoidal line integral of the interpolated cable cost along a polyline.
inline double integrate_polyline_cost(const Manifold& m, const std::vector<Vec3>& points) {
    double cost = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double seg = distance(points[i], points[i + 1]);
        cost += seg * 0.5 *
                (detail::cable_cost_at(m, points[i]) + detail::cable_cost_at(m, points[i + 1]));
    }
    return cost;
}

inline double polyline_length(const std::vector<Vec3>& points) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) len += distance(points[i], points[i + 1]);
    return len;
}

inline GeodesicPath trace_geodesic(const DistanceField& field, const Manifold& m,
                                   std::size_t target) {
    if (target >= m.vertex_count())
        throw InputError("trace_geodesic: target vertex " + std::to_string(target) +
                         " out of range");
    if (field.value.size() != m.vertex_count())
        throw InputError("trace_geodesic: field does not cover the manifold");

    GeodesicPath path;
    const bool is_source = std::find(field.source_ids.begin(), field.source_ids.end(), target) !=
                           field.source_ids.end();
    if (is_source) {
        path.points.push_back(m.vertices[target]);
        return path;
    }

    const double step = 0.25 * m.cell_size;
    const std::size_t max_steps = 10 * m.vertex_count();
    double x = m.vertices[target].x;
    double y = m.vertices[target].y;
    path.points.push_back(m.vertices[target]);
    double t_prev = field.value[target];
    int stalled = 0;
    bool done = false;

    auto append_predecessor_hops = [&](std::size_t from) {
        std::size_t v = from;
        std::size_t hops = 0;
        path.points.push_back(m.vertices[v]);
        while (field.predecessor[v] != v) {
            v = field.predecessor[v];
            path.points.push_back(m.vertices[v]);
            if (++hops > m.vertex_count())
                throw InternalError("trace_geodesic: predecessor chain does not terminate");
        }
    };

    for (std::size_t iter = 0; iter < max_steps && !done; ++iter) {
        // Snap onto a source once within one step of it.
        for (std::size_t s : field.source_ids) {
            const double dx = m.vertices[s].x - x, dy = m.vertices[s].y - y;
            if (dx * dx + dy * dy <= step * step) {
                path.points.push_back(m.vertices[s]);
                done = true;
                break;
            }
        }
        if (done) break;

        const Vec2 g = detail::sampled_gradient(m, field.value, x, y, 0.5 * m.cell_size);
        const double gn = g.norm();
        if (gn < 1e-12 || stalled >= 3) {
            const auto [v, snap_dist] = nearest_vertex(m, x, y);
            (void)snap_dist;
            append_predecessor_hops(v);
            done = true;
            break;
        }
        x -= step * g.x / gn;
        y -= step * g.y / gn;
        x = std::clamp(x, m.x0, m.x0 + (m.cols - 1) * m.cell_size);
        y = std::clamp(y, m.y0, m.y0 + (m.rows - 1) * m.cell_size);
        path.points.push_back(detail::surface_point(m, x, y));
        const double t_here = detail::interpolate(field.value, detail::locate(m, x, y));
        if (t_here >= t_prev - 1e-12 * (1.0 + std::abs(t_prev)))
            ++stalled;
        else
            stalled = 0;
        t_prev = t_here;
    }
    if (!done)
        throw InternalError("trace_geodesic: no source reached within " +
                            std::to_string(max_steps) + " steps");

    path.length = polyline_length(path.points);
    path.cost = integrate_polyline_cost(m, path.points);
    return path;
}

}  // namespace cableplan
