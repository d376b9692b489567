#pragma once

// GeoJSON export of a solved network: one LineString per cable edge, one
// Point per branching unit, one Point per chosen landing station, plus a
// summary block the report renderer reads back.

#include <string>
#include <vector>

#include "json.hpp"

#include "cableplan/solver.hpp"

namespace cableplan {

using ordered_json = nlohmann::ordered_json;

inline ordered_json solution_to_geojson(const NetworkSolution& sol, const Manifold& m) {
    ordered_json root;
    root["type"] = "FeatureCollection";
    root["summary"] = {
        {"mode", to_string(sol.mode)},
        {"regions", sol.chosen_station.size()},
        {"steiner_nodes", sol.steiner_vertices.size()},
        {"bu_groups", sol.bu_groups.size()},
        {"charged_bu_count", detail::charged_group_count(sol)},
        {"cable_cost", sol.cost_breakdown.cable},
        {"bu_cost", sol.cost_breakdown.bu},
        {"station_cost", sol.cost_breakdown.stations},
        {"total_cost", sol.cost_breakdown.total},
        {"total_length_m", sol.total_length},
        {"dp_objective", sol.dp_objective},
        {"topologies_evaluated", sol.topologies_evaluated},
        {"topologies_pruned", sol.topologies_pruned},
    };

    auto point_at = [&m](std::size_t v) {
        const Vec3& p = m.vertices[v];
        return ordered_json{p.x, p.y, p.z};
    };

    ordered_json features = ordered_json::array();
    for (const auto& e : sol.edge_paths) {
        if (e.path.points.size() < 2) continue;  // merged edge, no physical cable
        ordered_json coords = ordered_json::array();
        for (const Vec3& p : e.path.points) coords.push_back({p.x, p.y, p.z});
        ordered_json f;
        f["type"] = "Feature";
        f["geometry"] = {{"type", "LineString"}, {"coordinates", std::move(coords)}};
        f["properties"] = {{"kind", "cable"},
                           {"from", e.from_label},
                           {"to", e.to_label},
                           {"cost", e.path.cost},
                           {"length_m", e.path.length}};
        features.push_back(std::move(f));
    }
    for (const auto& g : sol.bu_groups) {
        ordered_json members = ordered_json::array();
        for (int mmb : g.members) members.push_back("s" + std::to_string(mmb + 1));
        ordered_json f;
        f["type"] = "Feature";
        f["geometry"] = {{"type", "Point"}, {"coordinates", point_at(g.vertex)}};
        f["properties"] = {{"kind", "bu"},
                           {"branch_count", g.branch_count},
                           {"charged_cost", g.charged_cost},
                           {"at_station", g.at_station},
                           {"members", std::move(members)},
                           {"vertex", g.vertex}};
        features.push_back(std::move(f));
    }
    for (const auto& s : sol.chosen_station) {
        ordered_json f;
        f["type"] = "Feature";
        f["geometry"] = {{"type", "Point"}, {"coordinates", point_at(s.vertex)}};
        f["properties"] = {{"kind", "station"},
                           {"region", s.region_name},
                           {"candidate", s.candidate_index + 1},
                           {"station_cost", s.station_cost},
                           {"vertex", s.vertex}};
        features.push_back(std::move(f));
    }
    root["features"] = std::move(features);
    return root;
}

}  // namespace cableplan
