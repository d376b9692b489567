#pragma once

// Shared helpers for the test suites: mesh builders, independent oracles.

#include <cmath>
#include <random>
#include <vector>

#include "cableplan/manifold.hpp"

namespace test_support {

inline cableplan::Raster flat_raster(std::size_t rows, std::size_t cols, double cell = 1.0,
                                     double z = 0.0) {
    cableplan::Raster r;
    r.rows = rows;
    r.cols = cols;
    r.cell_size = cell;
    r.values.assign(rows * cols, z);
    return r;
}

/// Radially symmetric basin: depth greatest in the middle, rim at z = 0.
inline cableplan::Raster basin_raster(std::size_t n, double cell = 1.0, double depth = 8.0) {
    cableplan::Raster r = flat_raster(n, n, cell);
    const double mid = 0.5 * static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double dr = (static_cast<double>(i) - mid) / mid;
            const double dc = (static_cast<double>(j) - mid) / mid;
            const double rad2 = dr * dr + dc * dc;
            r.at(i, j) = -depth * std::max(0.0, 1.0 - rad2);
        }
    }
    return r;
}

inline cableplan::Manifold flat_manifold(std::size_t rows, std::size_t cols, double cell = 1.0,
                                         double cable_cost = 1.0, double bu_cost = 0.0) {
    cableplan::Manifold m = cableplan::build_manifold(flat_raster(rows, cols, cell));
    return cableplan::apply_cost_model(std::move(m), cable_cost, bu_cost, {}, 1.0);
}

/// Random positive cable-cost field over a flat mesh; deterministic per seed.
inline cableplan::Manifold random_cost_manifold(std::size_t rows, std::size_t cols,
                                                std::uint32_t seed, double cell = 1.0,
                                                double bu_cost = 0.0) {
    cableplan::Manifold m = flat_manifold(rows, cols, cell, 1.0, bu_cost);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> f(0.5, 2.5);
    for (auto& c : m.cable_cost) c = f(rng);
    return m;
}

/// Smoothly varying cable-cost field (a few random cosine bumps), the kind
/// of field the 3% path-vs-field contract is meant for.
inline cableplan::Manifold smooth_cost_manifold(std::size_t rows, std::size_t cols,
                                                std::uint32_t seed, double cell = 1.0,
                                                double bu_cost = 0.0) {
    cableplan::Manifold m = flat_manifold(rows, cols, cell, 1.0, bu_cost);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    struct Bump {
        double cx, cy, amp, width;
    };
    std::vector<Bump> bumps;
    const double w = static_cast<double>(cols - 1) * cell;
    const double hgt = static_cast<double>(rows - 1) * cell;
    for (int k = 0; k < 4; ++k)
        bumps.push_back({unit(rng) * w, unit(rng) * hgt, 0.15 + 0.25 * unit(rng),
                         0.25 * std::max(w, hgt) * (0.6 + unit(rng))});
    for (std::size_t v = 0; v < m.vertex_count(); ++v) {
        double f = 1.0;
        for (const auto& b : bumps) {
            const double dx = m.vertices[v].x - b.cx, dy = m.vertices[v].y - b.cy;
            f += b.amp * std::exp(-(dx * dx + dy * dy) / (b.width * b.width));
        }
        m.cable_cost[v] = f;
    }
    return m;
}

/// Independent point-in-polygon check (winding-number formulation) used to
/// cross-validate the library's even-odd test.
inline bool winding_point_in_polygon(double px, double py,
                                     const std::vector<cableplan::Vec2>& poly) {
    int winding = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % n];
        const double cross = (b.x - a.x) * (py - a.y) - (px - a.x) * (b.y - a.y);
        if (a.y <= py) {
            if (b.y > py && cross > 0) ++winding;
        } else {
            if (b.y <= py && cross < 0) --winding;
        }
    }
    return winding != 0;
}

/// Geometric median of three points by Weiszfeld iteration; the Fermat point
/// when all triangle angles are below 120 degrees.
inline cableplan::Vec2 fermat_point(const cableplan::Vec2& a, const cableplan::Vec2& b,
                                    const cableplan::Vec2& c) {
    cableplan::Vec2 p{(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
    for (int iter = 0; iter < 2000; ++iter) {
        double wx = 0.0, wy = 0.0, wsum = 0.0;
        for (const auto& q : {a, b, c}) {
            const double d = std::max(1e-12, (p - q).norm());
            wx += q.x / d;
            wy += q.y / d;
            wsum += 1.0 / d;
        }
        const cableplan::Vec2 next{wx / wsum, wy / wsum};
        if ((next - p).norm() < 1e-12) return next;
        p = next;
    }
    return p;
}

inline double fermat_length(const cableplan::Vec2& a, const cableplan::Vec2& b,
                            const cableplan::Vec2& c) {
    const cableplan::Vec2 p = fermat_point(a, b, c);
    return (p - a).norm() + (p - b).norm() + (p - c).norm();
}

}  // namespace test_support
