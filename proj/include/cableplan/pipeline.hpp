#pragma once

// Orchestration behind the CLI subcommands: scenario building, all-pairs
// caching, the solve/fmm/pairs/report flows and their artifacts.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cableplan/cost_matrix.hpp"
#include "cableplan/errors.hpp"
#include "cableplan/geojson.hpp"
#include "cableplan/raster_io.hpp"
#include "cableplan/report.hpp"
#include "cableplan/scenario.hpp"
#include "cableplan/solver.hpp"

namespace cableplan {

struct RunOverrides {
    std::optional<BranchMode> mode;
    unsigned threads = 1;
    std::optional<double> seed_incumbent;
    std::string out_dir;         // replaces the directory of relative output paths
    std::string config_dir;      // directory of the config file, for path resolution
    std::string fmm_source;      // "x,y" for the fmm subcommand
};

struct BuiltScenario {
    Manifold manifold;
    std::vector<RegionSpec> regions;
};

inline BuiltScenario build_scenario(const ScenarioConfig& cfg, std::ostream* diag = nullptr) {
    const Raster raster = read_raster_file(cfg.terrain.path, cfg.terrain.format);
    BuiltScenario built;
    built.manifold = apply_cost_model(build_manifold(raster), cfg.cost_model.base_cable_cost,
                                      cfg.cost_model.base_bu_cost, cfg.cost_model.zones,
                                      cfg.cost_model.land_penalty);
    const Manifold& m = built.manifold;

    for (const auto& region : cfg.regions) {
        RegionSpec spec;
        spec.name = region.name;
        for (std::size_t i = 0; i < region.candidates.size(); ++i) {
            const auto& c = region.candidates[i];
            std::size_t vertex;
            if (c.by_grid) {
                if (c.row >= m.rows || c.col >= m.cols)
                    throw InputError("region '" + region.name + "' candidate " +
                                     std::to_string(i + 1) + " grid position (" +
                                     std::to_string(c.row) + ", " + std::to_string(c.col) +
                                     ") is outside the raster");
                vertex = m.vertex_index(c.row, c.col);
            } else {
                const auto [v, snap] = nearest_vertex(m, c.x, c.y);
                vertex = v;
                if (snap > 0.5 * m.cell_size && diag)
                    *diag << "warning: region '" << region.name << "' candidate " << (i + 1)
                          << " snapped " << snap << " m to the nearest grid vertex\n";
            }
            spec.candidates.push_back({vertex, c.cost});
        }
        built.regions.push_back(std::move(spec));
    }
    return built;
}

namespace detail {

inline std::string resolve_output(const std::string& path, const RunOverrides& ov) {
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    const std::string base = !ov.out_dir.empty() ? ov.out_dir
                             : (!ov.config_dir.empty() ? ov.config_dir : ".");
    return (std::filesystem::path(base) / p).string();
}

inline std::string resolve_cache_dir(const ScenarioConfig& cfg, const RunOverrides& ov) {
    if (const char* env = std::getenv("CABLEPLAN_CACHE_DIR"); env && *env) return env;
    if (!cfg.output.cache_dir.empty()) return resolve_output(cfg.output.cache_dir, ov);
    return resolve_output("cache", ov);
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write output file: " + path);
    out << content;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace detail

/// Computes the all-pairs matrix through the cache directory: reuses a cache
/// file whose manifold digest matches, otherwise recomputes and overwrites.
inline CostMatrix cached_all_pairs(const Manifold& m, const ScenarioConfig& cfg,
                                   const RunOverrides& ov, std::ostream& diag) {
    const std::string dir = detail::resolve_cache_dir(cfg, ov);
    std::filesystem::create_directories(dir);
    const std::uint64_t digest = manifold_hash(m);
    const std::string path =
        (std::filesystem::path(dir) / ("pairs_" + detail::hex64(digest) + ".cpw")).string();

    CostMatrix mat;
    std::string note;
    if (load_cost_matrix(path, digest, mat, &note)) {
        diag << "pairs: cache hit (" << path << ")\n";
        return mat;
    }
    if (!note.empty()) diag << "pairs: " << note << "\n";
    diag << "pairs: computing " << m.vertex_count() << "x" << m.vertex_count() << " matrix\n";
    mat = all_pairs_costs(m, cfg.limits.max_vertices, ov.threads);
    save_cost_matrix(path, mat, digest);
    diag << "pairs: cached to " << path << "\n";
    return mat;
}

/// End-to-end solve: distance records, all-pairs cache, topology search, and
/// artifact emission (GeoJSON, report, solve log). With a sweep block the
/// scenario is solved once per BU cost and the report gains the sweep table.
inline int run_solve(const ScenarioConfig& cfg, const RunOverrides& ov, std::ostream& diag) {
    BuiltScenario built = build_scenario(cfg, &diag);
    const SolveOptions base_options = [&] {
        SolveOptions o;
        o.mode = ov.mode.value_or(cfg.mode);
        o.threads = ov.threads;
        o.max_pairs_vertices = cfg.limits.max_vertices;
        if (ov.seed_incumbent) o.seed_incumbent = *ov.seed_incumbent;
        return o;
    }();

    CostMatrix pairs;
    const bool needs_pairs = built.regions.size() >= 3;
    if (needs_pairs) pairs = cached_all_pairs(built.manifold, cfg, ov, diag);

    FieldCache cache(built.manifold);
    std::ostringstream log;

    auto solve_once = [&](const Manifold& m) {
        SolveOptions o = base_options;
        o.pairs = needs_pairs ? &pairs : nullptr;
        o.field_cache = &cache;
        o.log = &log;
        NetworkSolution sol = solve_network(m, built.regions, o);
        evaluate_solution(sol, m);  // consistency check against the DP objective
        return sol;
    };

    ordered_json sweep_rows = ordered_json::array();
    NetworkSolution sol;
    if (cfg.sweep_bu_costs.empty()) {
        sol = solve_once(built.manifold);
    } else {
        for (double bu : cfg.sweep_bu_costs) {
            log << "sweep bu_cost=" << bu << "\n";
            const Manifold swept =
                apply_cost_model(built.manifold, cfg.cost_model.base_cable_cost, bu,
                                 cfg.cost_model.zones, cfg.cost_model.land_penalty);
            sol = solve_once(swept);
            sweep_rows.push_back({{"bu_cost", bu},
                                  {"charged_bu_count", detail::charged_group_count(sol)},
                                  {"total_length_m", sol.total_length},
                                  {"total_cost", sol.cost_breakdown.total}});
        }
    }

    ordered_json geojson = solution_to_geojson(sol, built.manifold);
    if (!sweep_rows.empty()) geojson["sweep"] = std::move(sweep_rows);

    const std::string geojson_path = detail::resolve_output(cfg.output.geojson, ov);
    const std::string report_path = detail::resolve_output(cfg.output.report, ov);
    detail::write_text_file(geojson_path, geojson.dump(2) + "\n");
    detail::write_text_file(report_path, render_report(geojson));
    detail::write_text_file(detail::resolve_output("solve_log.txt", ov), log.str());
    diag << "solve: wrote " << geojson_path << " and " << report_path << "\n";
    diag << "solve: total cost " << sol.cost_breakdown.total << ", length "
         << sol.total_length / 1000.0 << " km, topologies evaluated " << sol.topologies_evaluated
         << " (pruned " << sol.topologies_pruned << ")\n";
    return 0;
}

/// Dumps one single-source distance field as an ESRI raster for inspection.
inline int run_fmm(const ScenarioConfig& cfg, const RunOverrides& ov, std::ostream& diag) {
    BuiltScenario built = build_scenario(cfg, &diag);
    const Manifold& m = built.manifold;
    std::size_t source;
    if (!ov.fmm_source.empty()) {
        const auto toks = detail::value_tokens(ov.fmm_source);
        double x = 0.0, y = 0.0;
        try {
            if (toks.size() != 2) throw std::invalid_argument("");
            x = std::stod(toks[0]);
            y = std::stod(toks[1]);
        } catch (const std::exception&) {
            throw InputError("fmm: --source must be 'x,y' in projected meters (got '" +
                             ov.fmm_source + "')");
        }
        source = nearest_vertex(m, x, y).first;
    } else {
        source = built.regions.front().candidates.front().vertex;
    }
    const DistanceField field = fmm_solve(m, {source});

    Raster out;
    out.rows = m.rows;
    out.cols = m.cols;
    out.cell_size = m.cell_size;
    out.x0 = m.x0;
    out.y0 = m.y0;
    out.values = field.value;
    const std::string path = detail::resolve_output("distance_field.asc", ov);
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    std::ofstream f(path, std::ios::binary);
    write_esri_ascii(f, out);
    diag << "fmm: source vertex " << source << ", field written to " << path << "\n";
    return 0;
}

inline int run_pairs(const ScenarioConfig& cfg, const RunOverrides& ov, std::ostream& diag) {
    BuiltScenario built = build_scenario(cfg, &diag);
    cached_all_pairs(built.manifold, cfg, ov, diag);
    return 0;
}

/// Re-renders the report from a stored GeoJSON solution.
inline int run_report(const ScenarioConfig& cfg, const RunOverrides& ov, std::ostream& out,
                      std::ostream& diag) {
    const std::string path = detail::resolve_output(cfg.output.geojson, ov);
    std::ifstream in(path);
    if (!in) throw InputError("report: no stored solution at " + path + "; run solve first");
    ordered_json geojson;
    try {
        in >> geojson;
    } catch (const std::exception& e) {
        throw InputError("report: cannot parse " + path + ": " + e.what());
    }
    out << render_report(geojson);
    diag << "report: rendered from " << path << "\n";
    return 0;
}

}  // namespace cableplan
