#pragma once

// Plain-text report rendering. Works off the GeoJSON document so `solve`
// output and a later `report` re-render are the same bytes.

#include <cstdio>
#include <string>

#include "json.hpp"

#include "cableplan/errors.hpp"

namespace cableplan {

namespace detail {

inline std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

}  // namespace detail

inline std::string render_report(const nlohmann::ordered_json& geojson) {
    using detail::fixed2;
    using detail::pad;
    if (!geojson.contains("summary"))
        throw InputError("render_report: GeoJSON lacks a summary block (not produced by solve?)");
    const auto& s = geojson["summary"];

    std::string out;
    out += "Cable network report\n";
    out += "====================\n";
    out += "mode: " + s["mode"].get<std::string>() + "\n";
    out += "regions: " + std::to_string(s["regions"].get<std::size_t>()) +
           "  steiner nodes: " + std::to_string(s["steiner_nodes"].get<std::size_t>()) +
           "  bu groups: " + std::to_string(s["bu_groups"].get<std::size_t>()) +
           "  charged BUs: " + std::to_string(s["charged_bu_count"].get<int>()) + "\n\n";

    out += "Station selection\n";
    out += pad("Region", 16) + pad("Choice", 8) + "Station cost\n";
    for (const auto& f : geojson["features"]) {
        if (f["properties"]["kind"] != "station") continue;
        const auto& p = f["properties"];
        out += pad(p["region"].get<std::string>(), 16) +
               pad("(" + std::to_string(p["candidate"].get<int>()) + ")", 8) +
               fixed2(p["station_cost"].get<double>()) + "\n";
    }
    out += "\n";

    out += "Branching units\n";
    out += pad("Members", 16) + pad("Branches", 10) + pad("Charged cost", 14) + "Note\n";
    bool any_bu = false;
    for (const auto& f : geojson["features"]) {
        if (f["properties"]["kind"] != "bu") continue;
        any_bu = true;
        const auto& p = f["properties"];
        std::string members;
        for (const auto& mmb : p["members"]) {
            if (!members.empty()) members += "+";
            members += mmb.get<std::string>();
        }
        out += pad(members, 16) + pad(std::to_string(p["branch_count"].get<int>()), 10) +
               pad(fixed2(p["charged_cost"].get<double>()), 14) +
               (p["at_station"].get<bool>() ? "at station" : "") + "\n";
    }
    if (!any_bu) out += "(none)\n";
    out += "\n";

    out += "Cost breakdown\n";
    out += pad("Cable cost", 20) + fixed2(s["cable_cost"].get<double>()) + "\n";
    out += pad("BU cost", 20) + fixed2(s["bu_cost"].get<double>()) + "\n";
    out += pad("Station cost", 20) + fixed2(s["station_cost"].get<double>()) + "\n";
    out += pad("Total cost", 20) + fixed2(s["total_cost"].get<double>()) + "\n";
    out += pad("Total length (km)", 20) + fixed2(s["total_length_m"].get<double>() / 1000.0) + "\n";

    if (geojson.contains("sweep")) {
        out += "\nEffect of BU cost on cable network design\n";
        out += pad("BU cost", 16) + pad("BUs", 6) + pad("Total length (km)", 20) + "Total cost\n";
        for (const auto& row : geojson["sweep"]) {
            out += pad(fixed2(row["bu_cost"].get<double>()), 16) +
                   pad(std::to_string(row["charged_bu_count"].get<int>()), 6) +
                   pad(fixed2(row["total_length_m"].get<double>() / 1000.0), 20) +
                   fixed2(row["total_cost"].get<double>()) + "\n";
        }
    }
    return out;
}

}  // namespace cableplan
