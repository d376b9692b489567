#pragma once

// Raster input: ESRI ASCII grids and plain XYZ triplet files. Both are read
// into the south-up Raster layout used by build_manifold.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cableplan/errors.hpp"
#include "cableplan/manifold.hpp"

namespace cableplan {

/// Reads an ESRI ASCII grid (ncols/nrows/cellsize header, values north to
/// south). Any NODATA cell is an input error: scenarios must cover the
/// whole region.
inline Raster read_esri_ascii(std::istream& in, const std::string& name = "<stream>") {
    std::map<std::string, double> header;
    std::string key;
    // Header lines are "key value"; the first non-keyword token starts the data.
    std::streampos data_start = in.tellg();
    while (in >> key) {
        std::string lowered = key;
        std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (lowered == "ncols" || lowered == "nrows" || lowered == "cellsize" ||
            lowered == "xllcorner" || lowered == "yllcorner" || lowered == "nodata_value") {
            double value = 0.0;
            if (!(in >> value)) throw InputError(name + ": malformed header entry '" + key + "'");
            header[lowered] = value;
            data_start = in.tellg();
        } else {
            in.seekg(data_start);
            break;
        }
    }
    if (!header.count("ncols") || !header.count("nrows"))
        throw InputError(name + ": ESRI header must define ncols and nrows");

    Raster r;
    r.cols = static_cast<std::size_t>(header["ncols"]);
    r.rows = static_cast<std::size_t>(header["nrows"]);
    r.cell_size = header.count("cellsize") ? header["cellsize"] : 1.0;
    r.x0 = header.count("xllcorner") ? header["xllcorner"] : 0.0;
    r.y0 = header.count("yllcorner") ? header["yllcorner"] : 0.0;
    if (r.rows == 0 || r.cols == 0) throw InputError(name + ": empty raster");

    const bool has_nodata = header.count("nodata_value") > 0;
    const double nodata = has_nodata ? header["nodata_value"] : 0.0;

    r.values.assign(r.rows * r.cols, 0.0);
    // File rows run north to south; flip into the south-up layout.
    for (std::size_t fr = 0; fr < r.rows; ++fr) {
        const std::size_t row = r.rows - 1 - fr;
        for (std::size_t c = 0; c < r.cols; ++c) {
            double z;
            if (!(in >> z))
                throw InputError(name + ": truncated data (file row " + std::to_string(fr) +
                                 ", col " + std::to_string(c) + ")");
            if (has_nodata && z == nodata)
                throw InputError(name + ": NODATA cell at file row " + std::to_string(fr) +
                                 ", col " + std::to_string(c) + "; coverage must be complete");
            r.at(row, c) = z;
        }
    }
    return r;
}

inline void write_esri_ascii(std::ostream& out, const Raster& r) {
    out << "ncols " << r.cols << "\n";
    out << "nrows " << r.rows << "\n";
    out << "xllcorner " << r.x0 << "\n";
    out << "yllcorner " << r.y0 << "\n";
    out << "cellsize " << r.cell_size << "\n";
    out.precision(17);
    for (std::size_t fr = 0; fr < r.rows; ++fr) {
        const std::size_t row = r.rows - 1 - fr;
        for (std::size_t c = 0; c < r.cols; ++c) {
            if (c) out << ' ';
            out << r.at(row, c);
        }
        out << "\n";
    }
}

/// Reads "x y z" triplets forming a complete uniform grid. Grid geometry is
/// inferred from the distinct coordinate values.
inline Raster read_xyz(std::istream& in, const std::string& name = "<stream>") {
    struct Triplet {
        double x, y, z;
    };
    std::vector<Triplet> points;
    double x, y, z;
    while (in >> x >> y >> z) {
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
            throw InputError(name + ": non-finite coordinate in XYZ record " +
                             std::to_string(points.size()));
        points.push_back({x, y, z});
    }
    if (points.empty()) throw InputError(name + ": empty XYZ file");

    auto distinct_sorted = [](std::vector<double> vals) {
        std::sort(vals.begin(), vals.end());
        std::vector<double> out;
        for (double v : vals)
            if (out.empty() || v > out.back() + 1e-9 * (1.0 + std::abs(v))) out.push_back(v);
        return out;
    };
    std::vector<double> xs, ys;
    xs.reserve(points.size());
    ys.reserve(points.size());
    for (const auto& p : points) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    xs = distinct_sorted(xs);
    ys = distinct_sorted(ys);
    if (xs.size() < 2 || ys.size() < 2)
        throw InputError(name + ": XYZ grid needs at least 2 distinct x and y values");
    if (xs.size() * ys.size() != points.size())
        throw InputError(name + ": XYZ records do not form a complete " +
                         std::to_string(ys.size()) + "x" + std::to_string(xs.size()) + " grid");

    const double dx = xs[1] - xs[0];
    const double dy = ys[1] - ys[0];
    auto check_uniform = [&name](const std::vector<double>& vals, double step, const char* axis) {
        for (std::size_t i = 1; i < vals.size(); ++i)
            if (std::abs((vals[i] - vals[i - 1]) - step) > 1e-6 * step)
                throw InputError(std::string(name) + ": non-uniform " + axis + " spacing in XYZ grid");
    };
    check_uniform(xs, dx, "x");
    check_uniform(ys, dy, "y");
    if (std::abs(dx - dy) > 1e-6 * dx)
        throw InputError(name + ": XYZ grid spacing differs between x and y");

    Raster r;
    r.cols = xs.size();
    r.rows = ys.size();
    r.cell_size = dx;
    r.x0 = xs.front();
    r.y0 = ys.front();
    r.values.assign(r.rows * r.cols, std::nan(""));
    auto locate = [](const std::vector<double>& vals, double v) {
        const auto it = std::lower_bound(vals.begin(), vals.end(), v - 1e-9 * (1.0 + std::abs(v)));
        return static_cast<std::size_t>(it - vals.begin());
    };
    for (const auto& p : points) {
        const std::size_t c = locate(xs, p.x);
        const std::size_t row = locate(ys, p.y);
        r.at(row, c) = p.z;
    }
    for (double v : r.values)
        if (std::isnan(v)) throw InputError(name + ": duplicate XYZ records leave grid cells unfilled");
    return r;
}

inline Raster read_raster_file(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open raster file: " + path);
    if (format == "esri") return read_esri_ascii(in, path);
    if (format == "xyz") return read_xyz(in, path);
    throw InputError("unknown raster format '" + format + "' (expected esri or xyz)");
}

}  // namespace cableplan
