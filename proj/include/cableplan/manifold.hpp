#pragma once

// Triangulated piecewise-linear terrain surface plus its per-vertex scalar
// cost fields (cable laying cost per meter, branching-unit install cost).

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cableplan/errors.hpp"
#include "cableplan/geometry.hpp"

namespace cableplan {

/// Gridded elevation input. Row 0 is the southmost row, so y grows north.
struct Raster {
    std::size_t rows = 0;
    std::size_t cols = 0;
    double cell_size = 1.0;
    double x0 = 0.0;  // x of column 0
    double y0 = 0.0;  // y of row 0
    std::vector<double> values;  // row-major, rows*cols

    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
};

struct CostZone {
    std::vector<Vec2> polygon;
    double bu_cost_override = 0.0;
    std::optional<double> cable_cost_override;
};

struct Manifold {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles;
    std::vector<double> cable_cost;  // per vertex, currency per meter
    std::vector<double> bu_cost;     // per vertex, currency
    std::size_t rows = 0;
    std::size_t cols = 0;
    double cell_size = 1.0;
    double x0 = 0.0;
    double y0 = 0.0;

    // CSR adjacency: triangles incident to each vertex, built once.
    std::vector<std::uint32_t> vert_tri_offset;
    std::vector<std::uint32_t> vert_tri_index;

    std::size_t vertex_count() const { return vertices.size(); }

    std::size_t vertex_index(std::size_t r, std::size_t c) const { return r * cols + c; }
    std::size_t vertex_row(std::size_t v) const { return v / cols; }
    std::size_t vertex_col(std::size_t v) const { return v % cols; }

    const Vec3& position(std::size_t v) const { return vertices[v]; }
};

namespace detail {

inline void build_vertex_triangle_adjacency(Manifold& m) {
    const std::size_t h = m.vertex_count();
    m.vert_tri_offset.assign(h + 1, 0);
    for (const auto& t : m.triangles)
        for (std::uint32_t v : t) ++m.vert_tri_offset[v + 1];
    for (std::size_t v = 0; v < h; ++v) m.vert_tri_offset[v + 1] += m.vert_tri_offset[v];
    m.vert_tri_index.resize(m.vert_tri_offset[h]);
    std::vector<std::uint32_t> cursor(m.vert_tri_offset.begin(), m.vert_tri_offset.end() - 1);
    for (std::uint32_t ti = 0; ti < m.triangles.size(); ++ti)
        for (std::uint32_t v : m.triangles[ti]) m.vert_tri_index[cursor[v]++] = ti;
}

inline std::uint64_t fnv1a_append(std::uint64_t h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace detail

/// Builds the triangulated surface from a raster of altitudes. Every grid
/// cell is split into two triangles along the same diagonal, so identical
/// input always yields identical vertex and triangle sequences.
inline Manifold build_manifold(const Raster& raster) {
    if (raster.rows < 2 || raster.cols < 2)
        throw InputError("build_manifold: raster needs at least 2 rows and 2 columns (got " +
                         std::to_string(raster.rows) + "x" + std::to_string(raster.cols) + ")");
    if (!(raster.cell_size > 0.0))
        throw InputError("build_manifold: cell_size must be positive");
    if (raster.values.size() != raster.rows * raster.cols)
        throw InputError("build_manifold: raster value count does not match rows*cols");

    Manifold m;
    m.rows = raster.rows;
    m.cols = raster.cols;
    m.cell_size = raster.cell_size;
    m.x0 = raster.x0;
    m.y0 = raster.y0;

    m.vertices.reserve(raster.rows * raster.cols);
    for (std::size_t r = 0; r < raster.rows; ++r) {
        for (std::size_t c = 0; c < raster.cols; ++c) {
            const double z = raster.at(r, c);
            if (!std::isfinite(z))
                throw InputError("build_manifold: non-finite altitude at row " + std::to_string(r) +
                                 ", col " + std::to_string(c));
            m.vertices.push_back({raster.x0 + static_cast<double>(c) * raster.cell_size,
                                  raster.y0 + static_cast<double>(r) * raster.cell_size, z});
        }
    }

    m.triangles.reserve(2 * (raster.rows - 1) * (raster.cols - 1));
    for (std::size_t r = 0; r + 1 < raster.rows; ++r) {
        for (std::size_t c = 0; c + 1 < raster.cols; ++c) {
            const auto v00 = static_cast<std::uint32_t>(m.vertex_index(r, c));
            const auto v10 = static_cast<std::uint32_t>(m.vertex_index(r, c + 1));
            const auto v01 = static_cast<std::uint32_t>(m.vertex_index(r + 1, c));
            const auto v11 = static_cast<std::uint32_t>(m.vertex_index(r + 1, c + 1));
            m.triangles.push_back({v00, v10, v11});
            m.triangles.push_back({v00, v11, v01});
        }
    }

    m.cable_cost.assign(m.vertex_count(), 1.0);
    m.bu_cost.assign(m.vertex_count(), 0.0);
    detail::build_vertex_triangle_adjacency(m);
    return m;
}

/// Fills the per-vertex cost fields: cable cost from a base rate with a land
/// multiplier above sea level, BU cost from a base value with polygon zone
/// overrides. Later zones shadow earlier ones.
inline Manifold apply_cost_model(Manifold m, double base_cable_cost, double base_bu_cost,
                                 const std::vector<CostZone>& zones, double land_penalty) {
    auto valid_cost = [](double v) { return std::isfinite(v) && v >= 0.0; };
    if (!valid_cost(base_cable_cost) || !valid_cost(base_bu_cost))
        throw InputError("apply_cost_model: base costs must be finite and non-negative");
    if (!valid_cost(land_penalty))
        throw InputError("apply_cost_model: land_penalty must be finite and non-negative");
    for (std::size_t zi = 0; zi < zones.size(); ++zi) {
        if (zones[zi].polygon.size() < 3)
            throw InputError("apply_cost_model: zone " + std::to_string(zi) +
                             " has a degenerate polygon (fewer than 3 corners)");
        if (!valid_cost(zones[zi].bu_cost_override) ||
            (zones[zi].cable_cost_override && !valid_cost(*zones[zi].cable_cost_override)))
            throw InputError("apply_cost_model: zone " + std::to_string(zi) +
                             " has an invalid cost override");
    }

    for (std::size_t v = 0; v < m.vertex_count(); ++v) {
        const Vec3& p = m.vertices[v];
        double cable = base_cable_cost;
        double bu = base_bu_cost;
        for (const CostZone& z : zones) {
            if (point_in_polygon(p.x, p.y, z.polygon)) {
                bu = z.bu_cost_override;
                if (z.cable_cost_override) cable = *z.cable_cost_override;
            }
        }
        if (p.z > 0.0) cable *= land_penalty;
        m.cable_cost[v] = cable;
        m.bu_cost[v] = bu;
    }
    return m;
}

/// Total area of the triangulated surface. Never smaller than the planar
/// footprint, with equality only for a flat raster.
inline double surface_area(const Manifold& m) {
    double area = 0.0;
    for (const auto& t : m.triangles)
        area += triangle_area(m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]);
    return area;
}

inline bool is_edge_connected(const Manifold& m) {
    const std::size_t h = m.vertex_count();
    if (h == 0) return false;
    std::vector<char> seen(h, 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        for (std::uint32_t k = m.vert_tri_offset[v]; k < m.vert_tri_offset[v + 1]; ++k) {
            for (std::uint32_t u : m.triangles[m.vert_tri_index[k]]) {
                if (!seen[u]) {
                    seen[u] = 1;
                    ++reached;
                    stack.push_back(u);
                }
            }
        }
    }
    return reached == h;
}

/// Content hash over geometry and the cable cost field; used to detect stale
/// all-pairs caches.
inline std::uint64_t manifold_hash(const Manifold& m) {
    std::uint64_t h = 1469598103934665603ULL;
    auto add_doubles = [&h](const double* p, std::size_t n) {
        h = detail::fnv1a_append(h, p, n * sizeof(double));
    };
    const std::uint64_t dims[2] = {m.rows, m.cols};
    h = detail::fnv1a_append(h, dims, sizeof(dims));
    add_doubles(&m.cell_size, 1);
    for (const Vec3& v : m.vertices) add_doubles(&v.x, 3);
    add_doubles(m.cable_cost.data(), m.cable_cost.size());
    return h;
}

/// Nearest grid vertex to a projected point; also reports the snap distance
/// so callers can warn when it exceeds half a cell.
inline std::pair<std::size_t, double> nearest_vertex(const Manifold& m, double x, double y) {
    const double fc = (x - m.x0) / m.cell_size;
    const double fr = (y - m.y0) / m.cell_size;
    auto clamp_idx = [](double f, std::size_t n) {
        const long i = std::lround(f);
        if (i < 0) return std::size_t{0};
        if (i >= static_cast<long>(n)) return n - 1;
        return static_cast<std::size_t>(i);
    };
    const std::size_t r = clamp_idx(fr, m.rows);
    const std::size_t c = clamp_idx(fc, m.cols);
    const std::size_t v = m.vertex_index(r, c);
    const double dx = m.vertices[v].x - x;
    const double dy = m.vertices[v].y - y;
    return {v, std::sqrt(dx * dx + dy * dy)};
}

}  // namespace cableplan
