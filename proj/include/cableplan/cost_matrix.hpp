#pragma once

// Dense all-pairs geodesic cost matrix and its binary cache file.
// Cache layout, little endian: magic "CPW1", H as u64, manifold content hash
// as u64, then H*H doubles row-major (row = source vertex).

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "cableplan/errors.hpp"
#include "cableplan/fast_marching.hpp"
#include "cableplan/manifold.hpp"

namespace cableplan {

struct CostMatrix {
    std::size_t h = 0;
    std::vector<double> w;  // row-major, w[p*h + q] = cost from p to q

    double at(std::size_t p, std::size_t q) const { return w[p * h + q]; }
    const double* row(std::size_t p) const { return w.data() + p * h; }
};

/// One fast-marching solve per source vertex; rows may be filled by parallel
/// workers since each writes a disjoint row of the shared matrix.
inline CostMatrix all_pairs_costs(const Manifold& m, std::size_t max_vertices = 4096,
                                  unsigned threads = 1) {
    const std::size_t h = m.vertex_count();
    if (h > max_vertices) {
        const double gib = static_cast<double>(h) * h * 8.0 / (1024.0 * 1024.0 * 1024.0);
        throw InputError("all_pairs_costs: " + std::to_string(h) + " vertices exceeds the ceiling of " +
                         std::to_string(max_vertices) + " (dense matrix would need " +
                         std::to_string(gib) + " GiB); raise limits.max_vertices or coarsen the grid");
    }
    CostMatrix mat;
    mat.h = h;
    mat.w.resize(h * h);

    auto fill_row = [&m, &mat, h](std::size_t p) {
        const DistanceField f = detail::fmm_solve_single(m, p);
        std::memcpy(mat.w.data() + p * h, f.value.data(), h * sizeof(double));
        mat.w[p * h + p] = 0.0;
    };

    if (threads <= 1) {
        for (std::size_t p = 0; p < h; ++p) fill_row(p);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t p = next.fetch_add(1); p < h; p = next.fetch_add(1)) fill_row(p);
            });
        }
        for (auto& th : pool) th.join();
    }
    return mat;
}

/// Symmetric view of a directed cost matrix: min of the two directions.
/// Cable cost between two points does not depend on direction; the raw
/// matrix is asymmetric only by discretization.
inline CostMatrix symmetrized(const CostMatrix& mat) {
    CostMatrix out;
    out.h = mat.h;
    out.w.resize(mat.w.size());
    for (std::size_t p = 0; p < mat.h; ++p)
        for (std::size_t q = 0; q < mat.h; ++q)
            out.w[p * mat.h + q] = std::min(mat.w[p * mat.h + q], mat.w[q * mat.h + p]);
    return out;
}

inline void save_cost_matrix(const std::string& path, const CostMatrix& mat,
                             std::uint64_t manifold_digest) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write cost matrix cache: " + path);
    out.write("CPW1", 4);
    const std::uint64_t h64 = mat.h;
    out.write(reinterpret_cast<const char*>(&h64), sizeof(h64));
    out.write(reinterpret_cast<const char*>(&manifold_digest), sizeof(manifold_digest));
    out.write(reinterpret_cast<const char*>(mat.w.data()),
              static_cast<std::streamsize>(mat.w.size() * sizeof(double)));
    if (!out) throw InputError("short write on cost matrix cache: " + path);
}

/// Loads a cache file if it exists and matches the manifold digest.
/// Returns false on missing file; a stale digest also returns false so the
/// caller can recompute and overwrite.
inline bool load_cost_matrix(const std::string& path, std::uint64_t manifold_digest,
                             CostMatrix& mat, std::string* note = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    char magic[4];
    std::uint64_t h64 = 0, digest = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&h64), sizeof(h64));
    in.read(reinterpret_cast<char*>(&digest), sizeof(digest));
    if (!in || std::memcmp(magic, "CPW1", 4) != 0) {
        if (note) *note = "cache file " + path + " is not a CPW1 matrix; recomputing";
        return false;
    }
    if (digest != manifold_digest) {
        if (note) *note = "cache file " + path + " was built for a different manifold; recomputing";
        return false;
    }
    mat.h = h64;
    mat.w.resize(h64 * h64);
    in.read(reinterpret_cast<char*>(mat.w.data()),
            static_cast<std::streamsize>(mat.w.size() * sizeof(double)));
    if (!in) {
        if (note) *note = "cache file " + path + " is truncated; recomputing";
        return false;
    }
    return true;
}

}  // namespace cableplan
