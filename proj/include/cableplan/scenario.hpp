#pragma once

// Scenario configuration: a small key-value tree format.
//
//   # comment
//   terrain {
//     path = basin.asc
//     format = esri            # esri | xyz
//   }
//   cost_model {
//     base_cable_cost = 25.0   # currency per meter
//     base_bu_cost = 1.0e6
//     land_penalty = 1000
//     zone {
//       polygon = (x1, y1) (x2, y2) (x3, y3) ...
//       bu_cost = 2.0e6
//       cable_cost = 30.0      # optional override
//     }
//   }
//   region "A" {
//     candidate = (x, y) cost = 1.0e7        # projected meters
//     candidate_rc = (row, col) cost = 1.2e7 # grid coordinates
//   }
//   mode = merge               # merge | three
//   limits {
//     max_vertices = 4096
//     max_oracle_evals = 10000000
//   }
//   output {
//     geojson = network.geojson
//     report = report.txt
//     cache_dir = cache
//   }
//   sweep { bu_cost = 1.0e6 2.0e6 3.0e6 }
//
// One entry per line. Unknown keys are errors; there are no silent typos.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cableplan/errors.hpp"
#include "cableplan/manifold.hpp"
#include "cableplan/solver.hpp"

namespace cableplan {

struct ScenarioConfig {
    struct TerrainCfg {
        std::string path;
        std::string format = "esri";
    } terrain;

    struct CostModelCfg {
        double base_cable_cost = 1.0;
        double base_bu_cost = 0.0;
        double land_penalty = 1000.0;
        std::vector<CostZone> zones;
    } cost_model;

    struct CandidateCfg {
        bool by_grid = false;  // true: (row, col); false: projected meters (x, y)
        double x = 0.0, y = 0.0;
        std::size_t row = 0, col = 0;
        double cost = 0.0;
    };
    struct RegionCfg {
        std::string name;
        std::vector<CandidateCfg> candidates;
    };
    std::vector<RegionCfg> regions;

    BranchMode mode = BranchMode::merge_allowed;

    struct LimitsCfg {
        std::size_t max_vertices = 4096;
        std::size_t max_oracle_evals = 10'000'000;
    } limits;

    struct OutputCfg {
        std::string geojson = "network.geojson";
        std::string report = "report.txt";
        std::string cache_dir;
    } output;

    std::vector<double> sweep_bu_costs;  // empty: no sweep
};

namespace detail {

struct ConfigNode {
    std::string key;
    std::string label;
    int line = 0;
    std::vector<std::tuple<std::string, std::string, int>> entries;  // key, raw value, line
    std::vector<ConfigNode> blocks;
};

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline ConfigNode parse_config_tree(std::istream& in) {
    ConfigNode root;
    std::vector<ConfigNode*> stack{&root};
    std::string raw;
    int line_no = 0;
    std::vector<std::pair<std::string, int>> pieces;  // logical lines with numbers
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        // Split around braces so one-line blocks like "key { a = 1 }" work.
        std::string cur;
        for (char c : raw) {
            if (c == '{') {
                pieces.emplace_back(trim(cur) + " {", line_no);
                cur.clear();
            } else if (c == '}') {
                if (!trim(cur).empty()) pieces.emplace_back(trim(cur), line_no);
                pieces.emplace_back("}", line_no);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!trim(cur).empty()) pieces.emplace_back(trim(cur), line_no);
    }
    for (const auto& [piece, piece_line] : pieces) {
        line_no = piece_line;
        std::string line = trim(piece);
        if (line.empty()) continue;
        if (line == "}") {
            if (stack.size() == 1)
                throw InputError("config line " + std::to_string(line_no) + ": unmatched '}'");
            stack.pop_back();
            continue;
        }
        if (line.back() == '{') {
            std::string head = trim(line.substr(0, line.size() - 1));
            std::string label;
            const auto quote = head.find('"');
            if (quote != std::string::npos) {
                const auto endq = head.find('"', quote + 1);
                if (endq == std::string::npos)
                    throw InputError("config line " + std::to_string(line_no) + ": unterminated label");
                label = head.substr(quote + 1, endq - quote - 1);
                head = trim(head.substr(0, quote));
            }
            ConfigNode block;
            block.key = head;
            block.label = label;
            block.line = line_no;
            stack.back()->blocks.push_back(std::move(block));
            stack.push_back(&stack.back()->blocks.back());
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError("config line " + std::to_string(line_no) +
                             ": expected 'key = value', a block, or '}': '" + line + "'");
        stack.back()->entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
                                           line_no);
    }
    if (stack.size() != 1) throw InputError("config: unterminated block (missing '}')");
    return root;
}

// Splits a raw value on whitespace, commas and parentheses.
inline std::vector<std::string> value_tokens(const std::string& raw) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '(' || c == ')') {
            if (!cur.empty()) {
                out.push_back(cur);
                cur.clear();
            }
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline double parse_number(const std::string& tok, int line) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw InputError("config line " + std::to_string(line) + ": expected a number, got '" + tok +
                         "'");
    }
    if (used != tok.size())
        throw InputError("config line " + std::to_string(line) + ": trailing junk in number '" + tok +
                         "'");
    return v;
}

inline ScenarioConfig::CandidateCfg parse_candidate(const std::string& raw, int line, bool by_grid) {
    const auto toks = value_tokens(raw);
    if (toks.size() != 2 && !(toks.size() == 4 && toks[2] == "cost") &&
        !(toks.size() == 5 && toks[2] == "cost" && toks[3] == "="))
        throw InputError("config line " + std::to_string(line) +
                         ": candidate must look like '(x, y)' or '(x, y) cost = C'");
    ScenarioConfig::CandidateCfg c;
    c.by_grid = by_grid;
    if (by_grid) {
        const double r = parse_number(toks[0], line);
        const double col = parse_number(toks[1], line);
        if (r < 0 || col < 0)
            throw InputError("config line " + std::to_string(line) + ": grid coordinates must be >= 0");
        c.row = static_cast<std::size_t>(r);
        c.col = static_cast<std::size_t>(col);
    } else {
        c.x = parse_number(toks[0], line);
        c.y = parse_number(toks[1], line);
    }
    if (toks.size() >= 4) c.cost = parse_number(toks.back(), line);
    if (c.cost < 0.0)
        throw InputError("config line " + std::to_string(line) + ": station cost must be >= 0");
    return c;
}

inline std::vector<Vec2> parse_point_list(const std::string& raw, int line) {
    const auto toks = value_tokens(raw);
    if (toks.size() % 2 != 0)
        throw InputError("config line " + std::to_string(line) + ": point list has a dangling value");
    std::vector<Vec2> pts;
    for (std::size_t i = 0; i + 1 < toks.size(); i += 2)
        pts.push_back({parse_number(toks[i], line), parse_number(toks[i + 1], line)});
    return pts;
}

[[noreturn]] inline void unknown_key(const std::string& key, const std::string& where, int line) {
    throw InputError("config line " + std::to_string(line) + ": unknown key '" + key + "' in " +
                     where);
}

}  // namespace detail

inline ScenarioConfig parse_scenario(std::istream& in) {
    using detail::parse_number;
    const detail::ConfigNode root = detail::parse_config_tree(in);
    ScenarioConfig cfg;
    bool have_terrain = false;

    for (const auto& [key, value, line] : root.entries) {
        if (key == "mode") {
            if (value == "merge" || value == "merge_allowed")
                cfg.mode = BranchMode::merge_allowed;
            else if (value == "three" || value == "three_branch_only")
                cfg.mode = BranchMode::three_branch_only;
            else
                throw InputError("config line " + std::to_string(line) + ": mode must be 'merge' or 'three'");
        } else {
            detail::unknown_key(key, "the top level", line);
        }
    }

    for (const auto& block : root.blocks) {
        if (block.key == "terrain") {
            have_terrain = true;
            for (const auto& [key, value, line] : block.entries) {
                if (key == "path")
                    cfg.terrain.path = value;
                else if (key == "format")
                    cfg.terrain.format = value;
                else
                    detail::unknown_key(key, "terrain", line);
            }
            if (!block.blocks.empty())
                throw InputError("config line " + std::to_string(block.blocks[0].line) +
                                 ": terrain takes no nested blocks");
            if (cfg.terrain.path.empty())
                throw InputError("config: terrain block must set 'path'");
            if (cfg.terrain.format != "esri" && cfg.terrain.format != "xyz")
                throw InputError("config: terrain format must be 'esri' or 'xyz'");
        } else if (block.key == "cost_model") {
            for (const auto& [key, value, line] : block.entries) {
                if (key == "base_cable_cost")
                    cfg.cost_model.base_cable_cost = parse_number(value, line);
                else if (key == "base_bu_cost")
                    cfg.cost_model.base_bu_cost = parse_number(value, line);
                else if (key == "land_penalty")
                    cfg.cost_model.land_penalty = parse_number(value, line);
                else
                    detail::unknown_key(key, "cost_model", line);
            }
            for (const auto& zone_block : block.blocks) {
                if (zone_block.key != "zone")
                    detail::unknown_key(zone_block.key, "cost_model", zone_block.line);
                CostZone zone;
                bool have_bu = false;
                for (const auto& [key, value, line] : zone_block.entries) {
                    if (key == "polygon")
                        zone.polygon = detail::parse_point_list(value, line);
                    else if (key == "bu_cost") {
                        zone.bu_cost_override = parse_number(value, line);
                        have_bu = true;
                    } else if (key == "cable_cost")
                        zone.cable_cost_override = parse_number(value, line);
                    else
                        detail::unknown_key(key, "zone", line);
                }
                if (zone.polygon.size() < 3)
                    throw InputError("config line " + std::to_string(zone_block.line) +
                                     ": zone polygon needs at least 3 corners");
                if (!have_bu)
                    throw InputError("config line " + std::to_string(zone_block.line) +
                                     ": zone must set bu_cost");
                cfg.cost_model.zones.push_back(std::move(zone));
            }
            if (cfg.cost_model.base_cable_cost < 0.0 || cfg.cost_model.base_bu_cost < 0.0 ||
                cfg.cost_model.land_penalty < 0.0)
                throw InputError("config: cost_model values must be non-negative");
        } else if (block.key == "region") {
            ScenarioConfig::RegionCfg region;
            region.name = block.label.empty()
                              ? "region" + std::to_string(cfg.regions.size() + 1)
                              : block.label;
            for (const auto& [key, value, line] : block.entries) {
                if (key == "candidate")
                    region.candidates.push_back(detail::parse_candidate(value, line, false));
                else if (key == "candidate_rc")
                    region.candidates.push_back(detail::parse_candidate(value, line, true));
                else
                    detail::unknown_key(key, "region '" + region.name + "'", line);
            }
            if (region.candidates.empty())
                throw InputError("config line " + std::to_string(block.line) + ": region '" +
                                 region.name + "' needs at least one candidate");
            cfg.regions.push_back(std::move(region));
        } else if (block.key == "limits") {
            for (const auto& [key, value, line] : block.entries) {
                if (key == "max_vertices")
                    cfg.limits.max_vertices = static_cast<std::size_t>(parse_number(value, line));
                else if (key == "max_oracle_evals")
                    cfg.limits.max_oracle_evals = static_cast<std::size_t>(parse_number(value, line));
                else
                    detail::unknown_key(key, "limits", line);
            }
        } else if (block.key == "output") {
            for (const auto& [key, value, line] : block.entries) {
                if (key == "geojson")
                    cfg.output.geojson = value;
                else if (key == "report")
                    cfg.output.report = value;
                else if (key == "cache_dir")
                    cfg.output.cache_dir = value;
                else
                    detail::unknown_key(key, "output", line);
            }
        } else if (block.key == "sweep") {
            for (const auto& [key, value, line] : block.entries) {
                if (key == "bu_cost") {
                    for (const auto& tok : detail::value_tokens(value))
                        cfg.sweep_bu_costs.push_back(parse_number(tok, line));
                } else {
                    detail::unknown_key(key, "sweep", line);
                }
            }
            if (cfg.sweep_bu_costs.empty())
                throw InputError("config line " + std::to_string(block.line) +
                                 ": sweep block must list bu_cost values");
        } else {
            detail::unknown_key(block.key, "the top level", block.line);
        }
    }

    if (!have_terrain) throw InputError("config: missing terrain block");
    if (cfg.regions.empty()) throw InputError("config: at least one region is required");
    for (double b : cfg.sweep_bu_costs)
        if (b < 0.0) throw InputError("config: sweep bu_cost values must be non-negative");
    return cfg;
}

inline ScenarioConfig parse_scenario_string(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in);
}

/// Parses a config file and resolves its terrain path (and relative output
/// paths) against the config's own directory. The terrain file must exist.
inline ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open scenario config: " + path);
    ScenarioConfig cfg = parse_scenario(in);
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    auto resolve = [&base](std::string& p) {
        if (!p.empty() && std::filesystem::path(p).is_relative()) p = (base / p).string();
    };
    resolve(cfg.terrain.path);
    if (!std::filesystem::exists(cfg.terrain.path))
        throw InputError("config: terrain file does not exist: " + cfg.terrain.path);
    return cfg;
}

}  // namespace cableplan
