// Acceptance suite: one criterion per section, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cableplan/oracle.hpp"
#include "cableplan/pipeline.hpp"
#include "cableplan/solver.hpp"
#include "test_support.hpp"

using namespace cableplan;
namespace fs = std::filesystem;

namespace {

struct AcceptanceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& message) {
    if (!cond) throw AcceptanceFailure(message);
}

std::string cli_path;
std::string scenario_dir;
std::string work_dir;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

RegionSpec point_region(const std::string& name, std::size_t vertex, double cost = 0.0) {
    return {name, {{vertex, cost}}};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    require(static_cast<bool>(in), "missing artifact: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// 1. FMM accuracy on a flat uniform mesh, plus improvement under refinement.

std::string criterion_fmm_accuracy() {
    const auto t0 = std::chrono::steady_clock::now();
    const Manifold coarse = test_support::flat_manifold(41, 41, 1.0);
    const DistanceField fc = fmm_solve(coarse, {0});
    const double solve_seconds = seconds_since(t0);

    double worst_cells = 0.0;
    for (std::size_t v = 0; v < coarse.vertex_count(); ++v) {
        const std::size_t cells = std::max(coarse.vertex_row(v), coarse.vertex_col(v));
        if (cells < 5) continue;
        const double exact = distance(coarse.vertices[0], coarse.vertices[v]);
        worst_cells = std::max(worst_cells, std::abs(fc.value[v] - exact) / exact);
    }
    require(worst_cells <= 0.02,
            fmt("max relative error %.3f%% exceeds 2%% at graph distance >= 5 cells",
                100.0 * worst_cells));

    // Refine 2x over the same physical domain; compare over the region beyond
    // five coarse cells from the source.
    const Manifold fine = test_support::flat_manifold(81, 81, 0.5);
    const DistanceField ff = fmm_solve(fine, {0});
    auto worst_beyond = [](const Manifold& m, const DistanceField& f, double radius) {
        double w = 0.0;
        for (std::size_t v = 0; v < m.vertex_count(); ++v) {
            const double exact = distance(m.vertices[0], m.vertices[v]);
            if (exact < radius) continue;
            w = std::max(w, std::abs(f.value[v] - exact) / exact);
        }
        return w;
    };
    const double err_coarse = worst_beyond(coarse, fc, 5.0);
    const double err_fine = worst_beyond(fine, ff, 5.0);
    require(err_fine < err_coarse, fmt("refinement did not reduce the error (%.4f%% -> %.4f%%)",
                                       100.0 * err_coarse, 100.0 * err_fine));
    require(solve_seconds < 1.0, fmt("41x41 solve took %.3f s (budget 1 s)", solve_seconds));
    return fmt("max rel err %.2f%% at >=5 cells; refined %.3f%% -> %.3f%%; solve %.3f s",
               100.0 * worst_cells, 100.0 * err_coarse, 100.0 * err_fine, solve_seconds);
}

// ---------------------------------------------------------------------------
// 2. Fermat-point recovery on a flat mesh with free branching units.

std::string criterion_fermat_recovery() {
    const auto t0 = std::chrono::steady_clock::now();
    const Manifold m = test_support::flat_manifold(25, 25, 1.0);
    // Equilateral triangle around the mesh center, snapped to vertices.
    const Vec2 a{12.0, 21.0}, b{4.0, 8.0}, c{20.0, 8.0};
    const std::vector<RegionSpec> regions{
        point_region("A", m.vertex_index(21, 12)), point_region("B", m.vertex_index(8, 4)),
        point_region("C", m.vertex_index(8, 20))};
    const NetworkSolution sol = solve_network(m, regions);  // builds the all-pairs cache
    const double elapsed = seconds_since(t0);

    const Vec2 fermat = test_support::fermat_point(a, b, c);
    const Vec3& placed = m.vertices[sol.steiner_vertices.at(0)];
    require(std::abs(placed.x - fermat.x) <= 1.0 + 1e-9 &&
                std::abs(placed.y - fermat.y) <= 1.0 + 1e-9,
            fmt("Steiner vertex (%.0f, %.0f) not within one cell of the Fermat point (%.3f, %.3f)",
                placed.x, placed.y, fermat.x, fermat.y));
    const double exact = test_support::fermat_length(a, b, c);
    require(std::abs(sol.dp_objective - exact) <= 0.03 * exact,
            fmt("network cost %.4f deviates more than 3%% from the Steiner length %.4f",
                sol.dp_objective, exact));
    require(elapsed < 10.0, fmt("took %.2f s (budget 10 s)", elapsed));
    return fmt("Steiner at (%.0f, %.0f), Fermat (%.2f, %.2f); cost %.3f vs %.3f; %.2f s",
               placed.x, placed.y, fermat.x, fermat.y, sol.dp_objective, exact, elapsed);
}

// ---------------------------------------------------------------------------
// 3. DP equals the exhaustive placement oracle exactly on random instances.

std::string criterion_oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    int checks = 0;
    for (std::uint32_t instance = 0; instance < 20; ++instance) {
        const std::size_t n = 9 + (instance % 7);  // mesh sizes 9..15
        Manifold m = test_support::random_cost_manifold(n, n, 1000 + instance);
        std::mt19937 rng(777 + instance);
        std::uniform_real_distribution<double> bu(0.0, 10.0);
        for (auto& v : m.bu_cost) v = bu(rng);

        std::uniform_int_distribution<std::size_t> pick(0, m.vertex_count() - 1);
        std::vector<RegionSpec> regions;
        std::vector<std::size_t> used;
        while (regions.size() < 4) {
            const std::size_t v = pick(rng);
            if (std::find(used.begin(), used.end(), v) != used.end()) continue;
            used.push_back(v);
            regions.push_back(point_region("R" + std::to_string(regions.size() + 1), v));
        }
        FieldCache cache(m);
        std::vector<RegionDistance> dists;
        for (const auto& r : regions) dists.push_back(region_distance(m, cache, r));
        const auto zero = station_coincidence_flags(regions, dists, m.vertex_count());
        const auto ebu = effective_bu_charges(m, zero);
        const CostMatrix pairs = symmetrized(all_pairs_costs(m));

        enumerate_full_topologies(4, [&](const SteinerTopology& t) {
            const auto cbar = terminal_barc(t, dists, m.vertex_count());
            const SkeletonTree sk = build_skeleton(t, t.n_steiner - 1);
            for (BranchMode mode : {BranchMode::merge_allowed, BranchMode::three_branch_only}) {
                const DpResult dp = dp_least_cost_system(sk, cbar, pairs, ebu, mode);
                const OracleResult oracle = brute_force_placements(sk, cbar, pairs, ebu, mode);
                require(dp.objective == oracle.objective,
                        fmt("instance %u: DP %.17g != oracle %.17g (%s)", instance, dp.objective,
                            oracle.objective, to_string(mode)));
                ++checks;
            }
            return true;
        });
    }
    const double elapsed = seconds_since(t0);
    require(elapsed < 120.0, fmt("took %.1f s (budget 120 s)", elapsed));
    return fmt("20 instances, %d exact DP/oracle matches; %.1f s", checks, elapsed);
}

// ---------------------------------------------------------------------------
// 4. Table-style BU cost sweep on the tutorial scenario.

std::string criterion_bu_sweep_trend() {
    ScenarioConfig cfg = load_scenario_file((fs::path(scenario_dir) / "tutorial.cfg").string());
    std::ostringstream diag;
    BuiltScenario built = build_scenario(cfg, &diag);
    Manifold& m = built.manifold;
    FieldCache cache(m);
    const CostMatrix pairs = all_pairs_costs(m);

    const std::vector<double> sweep{1e5, 2e5, 3e5, 5e5, 8e5, 1.1e6, 1.5e6, 3e6};
    std::vector<int> counts;
    std::vector<double> lengths, costs;
    for (double b : sweep) {
        const Manifold swept = apply_cost_model(m, cfg.cost_model.base_cable_cost, b,
                                                cfg.cost_model.zones, cfg.cost_model.land_penalty);
        SolveOptions o;
        o.pairs = &pairs;
        o.field_cache = &cache;
        const NetworkSolution sol = solve_network(swept, built.regions, o);
        counts.push_back(detail::charged_group_count(sol));
        lengths.push_back(sol.total_length);
        costs.push_back(sol.dp_objective);
    }
    std::string staircase;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        staircase += std::to_string(counts[i]);
        if (i + 1 < sweep.size()) staircase += ",";
        if (i == 0) continue;
        require(counts[i] <= counts[i - 1],
                fmt("charged BU count rose from %d to %d at step %zu", counts[i - 1], counts[i], i));
        require(lengths[i] >= lengths[i - 1] - 1e-6,
                fmt("total length fell from %.3f to %.3f at step %zu", lengths[i - 1], lengths[i], i));
        require(costs[i] >= costs[i - 1] - 1e-6,
                fmt("total cost fell from %.3f to %.3f at step %zu", costs[i - 1], costs[i], i));
        if (i >= 2) {
            const double s_prev = (costs[i - 1] - costs[i - 2]) / (sweep[i - 1] - sweep[i - 2]);
            const double s_here = (costs[i] - costs[i - 1]) / (sweep[i] - sweep[i - 1]);
            require(s_here <= s_prev + 1e-9,
                    fmt("cost curve convex kink at step %zu (slopes %.6g -> %.6g)", i, s_prev, s_here));
        }
    }
    require(counts.front() > counts.back(), "sweep never crossed a BU-count breakpoint");
    return "BU counts [" + staircase + "] non-increasing; lengths and costs monotone, cost concave";
}

// ---------------------------------------------------------------------------
// 5. Square of four terminals: one 4-branch unit vs two 3-branch units.

std::string criterion_multibranch_square() {
    Manifold m = test_support::flat_manifold(17, 17, 1.0);
    const std::vector<RegionSpec> regions{
        point_region("SW", m.vertex_index(4, 4)), point_region("SE", m.vertex_index(4, 12)),
        point_region("NW", m.vertex_index(12, 4)), point_region("NE", m.vertex_index(12, 12))};

    // Derive the BU-cost window in which the single 4-branch unit is optimal:
    // above the two-Y/one-X crossover, below the no-BU network.
    FieldCache cache(m);
    std::vector<RegionDistance> dists;
    for (const auto& r : regions) dists.push_back(region_distance(m, cache, r));
    const auto zero = station_coincidence_flags(regions, dists, m.vertex_count());
    const CostMatrix pairs = symmetrized(all_pairs_costs(m));
    SteinerTopology t;
    t.n_terminals = 4;
    t.n_steiner = 2;
    t.edges_e1 = {{0, 0}, {1, 0}, {2, 1}, {3, 1}};
    t.edges_e2 = {{0, 1}};
    const SkeletonTree sk = build_skeleton(t, 1);
    const auto cbar = terminal_barc(t, dists, m.vertex_count());
    const std::vector<double> free_charge(m.vertex_count(), 0.0);
    const double yy = dp_least_cost_system(sk, cbar, pairs, free_charge, BranchMode::merge_allowed)
                          .objective;
    const std::size_t center = m.vertex_index(8, 8);
    const double xx = placement_cost(sk, cbar, pairs, free_charge, BranchMode::merge_allowed,
                                     {center, center});
    std::vector<double> parked(m.vertex_count(), 1e9);
    for (std::size_t q = 0; q < m.vertex_count(); ++q)
        if (zero[q]) parked[q] = 0.0;
    const double hh =
        dp_least_cost_system(sk, cbar, pairs, parked, BranchMode::three_branch_only).objective;
    const double b_low = xx - yy;
    const double b_high = std::min(0.5 * (hh - yy), hh - xx);
    require(b_low > 0.0 && b_high > b_low, "could not derive a valid BU-cost window");
    const double bu = 0.5 * (b_low + b_high);
    for (auto& v : m.bu_cost) v = bu;

    SolveOptions merge_opts;
    merge_opts.mode = BranchMode::merge_allowed;
    const NetworkSolution merged = solve_network(m, regions, merge_opts);
    SolveOptions three_opts;
    three_opts.mode = BranchMode::three_branch_only;
    const NetworkSolution three = solve_network(m, regions, three_opts);

    require(merged.bu_groups.size() == 1 && merged.bu_groups[0].branch_count == 4,
            fmt("merge mode produced %zu groups instead of one 4-branch unit",
                merged.bu_groups.size()));
    const CostBreakdown merged_eval = evaluate_solution(merged, m);
    const CostBreakdown three_eval = evaluate_solution(three, m);
    require(merged_eval.total < three_eval.total,
            fmt("merge total %.4f not below three-branch total %.4f", merged_eval.total,
                three_eval.total));
    const double merged_len = merged.total_length;
    const double three_len = three.total_length;
    require(three_len < merged_len,
            fmt("three-branch cable %.4f not shorter than merged %.4f", three_len, merged_len));
    return fmt("BU window (%.3f, %.3f), used %.3f; totals %.3f < %.3f, lengths %.3f < %.3f", b_low,
               b_high, bu, merged_eval.total, three_eval.total, three_len, merged_len);
}

// ---------------------------------------------------------------------------
// 6. Regional station selection matches the pointer rule; perturbation flips it.

std::string criterion_station_selection() {
    const Manifold m = test_support::flat_manifold(19, 19, 1.0);
    std::vector<RegionSpec> regions{
        {"A",
         {{m.vertex_index(1, 3), 10.0}, {m.vertex_index(2, 6), 11.5}, {m.vertex_index(4, 1), 13.0}}},
        {"B",
         {{m.vertex_index(17, 4), 12.0}, {m.vertex_index(16, 8), 9.5}, {m.vertex_index(15, 2), 11.0}}},
        {"C",
         {{m.vertex_index(8, 17), 10.0}, {m.vertex_index(12, 16), 10.5}, {m.vertex_index(5, 16), 14.0}}}};
    FieldCache cache(m);
    SolveOptions o;
    o.field_cache = &cache;
    const NetworkSolution sol = solve_network(m, regions, o);

    std::vector<int> attach(regions.size(), -1);
    for (const auto& [term, st] : sol.topology.edges_e1) attach[term] = st;
    for (std::size_t l = 0; l < regions.size(); ++l) {
        const std::size_t ax = sol.steiner_vertices[attach[l]];
        double best = std::numeric_limits<double>::infinity();
        std::uint32_t best_c = 0;
        for (std::uint32_t c = 0; c < regions[l].candidates.size(); ++c) {
            const auto& cand = regions[l].candidates[c];
            const double v = cache.field(cand.vertex).value[ax] + cand.station_cost;
            if (v < best) {
                best = v;
                best_c = c;
            }
        }
        require(sol.chosen_station[l].candidate_index == best_c,
                fmt("region %zu chose candidate %u, pointwise minimum is %u", l,
                    sol.chosen_station[l].candidate_index + 1, best_c + 1));
    }

    // Raise region A's winner above its domination bound and verify the flip.
    const std::size_t ax = sol.steiner_vertices[attach[0]];
    const std::uint32_t won = sol.chosen_station[0].candidate_index;
    double runner_value = std::numeric_limits<double>::infinity();
    std::uint32_t runner = 0;
    for (std::uint32_t c = 0; c < regions[0].candidates.size(); ++c) {
        if (c == won) continue;
        const auto& cand = regions[0].candidates[c];
        const double v = cache.field(cand.vertex).value[ax] + cand.station_cost;
        if (v < runner_value) {
            runner_value = v;
            runner = c;
        }
    }
    const double geo_won = cache.field(regions[0].candidates[won].vertex).value[ax];
    regions[0].candidates[won].station_cost = runner_value - geo_won + 0.5;
    const RegionDistance flipped = region_distance(m, cache, regions[0]);
    require(flipped.pointer[ax] == runner,
            fmt("pointer still %u after perturbation, predicted %u", flipped.pointer[ax] + 1,
                runner + 1));
    return fmt("3 regions x 3 candidates all at the pointwise minimum; perturbed pointer flipped to (%u)",
               runner + 1);
}

// ---------------------------------------------------------------------------
// 7. DP objective is identical for every skeleton root.

std::string criterion_root_invariance() {
    int instances = 0, comparisons = 0;
    for (std::uint32_t seed = 1; seed <= 10; ++seed) {
        const std::size_t n = 7 + (seed % 3);
        const int terminals = 4 + (seed % 2);
        Manifold m = test_support::random_cost_manifold(n, n, 555 + seed);
        std::mt19937 rng(99 + seed);
        std::uniform_real_distribution<double> bu(0.0, 8.0);
        for (auto& v : m.bu_cost) v = bu(rng);
        std::uniform_int_distribution<std::size_t> pick(0, m.vertex_count() - 1);
        std::vector<RegionSpec> regions;
        std::vector<std::size_t> used;
        while (regions.size() < static_cast<std::size_t>(terminals)) {
            const std::size_t v = pick(rng);
            if (std::find(used.begin(), used.end(), v) != used.end()) continue;
            used.push_back(v);
            regions.push_back(point_region("R" + std::to_string(regions.size() + 1), v));
        }
        FieldCache cache(m);
        std::vector<RegionDistance> dists;
        for (const auto& r : regions) dists.push_back(region_distance(m, cache, r));
        const auto zero = station_coincidence_flags(regions, dists, m.vertex_count());
        const auto ebu = effective_bu_charges(m, zero);
        const CostMatrix pairs = symmetrized(all_pairs_costs(m));
        ++instances;
        enumerate_full_topologies(terminals, [&](const SteinerTopology& t) {
            const auto cbar = terminal_barc(t, dists, m.vertex_count());
            for (BranchMode mode : {BranchMode::merge_allowed, BranchMode::three_branch_only}) {
                double reference = 0.0;
                for (int root = 0; root < t.n_steiner; ++root) {
                    const DpResult dp =
                        dp_least_cost_system(build_skeleton(t, root), cbar, pairs, ebu, mode);
                    if (root == 0) {
                        reference = dp.objective;
                    } else {
                        require(dp.objective == reference,
                                fmt("seed %u: objective differs across roots (%.17g vs %.17g)",
                                    seed, reference, dp.objective));
                        ++comparisons;
                    }
                }
            }
            return true;
        });
    }
    return fmt("%d instances, %d exact cross-root equalities", instances, comparisons);
}

// ---------------------------------------------------------------------------
// 8. Wall time of pairs + one DP fits the H^2 (log H + N - 3) model.

std::string criterion_complexity_scaling() {
    const int n_terminals = 4;
    std::vector<double> xs, ys;
    std::string detail;
    for (std::size_t side : {20, 30, 40, 50}) {
        const Manifold m = test_support::flat_manifold(side, side, 1.0);
        const double h = static_cast<double>(m.vertex_count());
        const std::vector<RegionSpec> regions{
            point_region("A", m.vertex_index(0, 0)), point_region("B", m.vertex_index(0, side - 1)),
            point_region("C", m.vertex_index(side - 1, 0)),
            point_region("D", m.vertex_index(side - 1, side - 1))};
        FieldCache cache(m);
        std::vector<RegionDistance> dists;
        for (const auto& r : regions) dists.push_back(region_distance(m, cache, r));
        const auto zero = station_coincidence_flags(regions, dists, m.vertex_count());
        const auto ebu = effective_bu_charges(m, zero);
        SteinerTopology t;
        enumerate_full_topologies(n_terminals, [&](const SteinerTopology& topo) {
            t = topo;
            return false;
        });
        const auto cbar = terminal_barc(t, dists, m.vertex_count());
        const SkeletonTree sk = build_skeleton(t, t.n_steiner - 1);

        const auto t0 = std::chrono::steady_clock::now();
        const CostMatrix pairs = all_pairs_costs(m, 4096, 1);
        (void)dp_least_cost_system(sk, cbar, pairs, ebu, BranchMode::merge_allowed);
        const double elapsed = seconds_since(t0);
        xs.push_back(std::log(h * h * (std::log(h) + n_terminals - 3)));
        ys.push_back(std::log(elapsed));
        detail += fmt("H=%zu %.3fs ", m.vertex_count(), elapsed);
    }
    const std::size_t k = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double cov = sxy - sx * sy / k;
    const double var_x = sxx - sx * sx / k;
    const double var_y = syy - sy * sy / k;
    const double r2 = (cov * cov) / (var_x * var_y);
    const double slope = cov / var_x;
    require(r2 >= 0.95, fmt("log-log R^2 = %.4f below 0.95 (%s)", r2, detail.c_str()));
    return detail + fmt("slope %.2f, R^2 %.4f", slope, r2);
}

// ---------------------------------------------------------------------------
// 9. Two end-to-end CLI runs produce byte-identical artifacts.

std::string criterion_determinism() {
    require(!cli_path.empty(), "determinism criterion needs --cli <path>");
    const fs::path base = fs::path(work_dir) / "determinism";
    fs::remove_all(base);
    fs::create_directories(base);
    const std::string config = (fs::path(scenario_dir) / "tutorial.cfg").string();
    for (const char* run : {"run1", "run2"}) {
        const std::string cmd = "\"" + cli_path + "\" solve --config \"" + config + "\" --out \"" +
                                (base / run).string() + "\" > \"" + (base / run).string() +
                                ".log\" 2>&1";
        require(std::system(cmd.c_str()) == 0, std::string("CLI solve failed for ") + run);
    }
    const std::string geo1 = slurp(base / "run1" / "out" / "network.geojson");
    const std::string geo2 = slurp(base / "run2" / "out" / "network.geojson");
    require(geo1 == geo2, "GeoJSON artifacts differ between runs");
    const std::string rep1 = slurp(base / "run1" / "out" / "report.txt");
    const std::string rep2 = slurp(base / "run2" / "out" / "report.txt");
    require(rep1 == rep2, "report artifacts differ between runs");
    return fmt("byte-identical GeoJSON (%zu bytes) and report (%zu bytes)", geo1.size(),
               rep1.size());
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--cli")
            cli_path = argv[i + 1];
        else if (flag == "--scenario-dir")
            scenario_dir = argv[i + 1];
        else if (flag == "--work-dir")
            work_dir = argv[i + 1];
    }
    if (scenario_dir.empty()) scenario_dir = "scenarios";
    if (work_dir.empty()) work_dir = "acceptance_work";
    fs::create_directories(work_dir);

    struct Criterion {
        int id;
        const char* title;
        std::function<std::string()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "FMM accuracy on a flat uniform mesh", criterion_fmm_accuracy},
        {2, "Fermat-point recovery at zero BU cost", criterion_fermat_recovery},
        {3, "DP equals the exhaustive oracle exactly", criterion_oracle_equivalence},
        {4, "BU cost sweep trend (count, length, cost)", criterion_bu_sweep_trend},
        {5, "4-branch unit vs 3-branch-only on a square", criterion_multibranch_square},
        {6, "regional station selection and pointer flip", criterion_station_selection},
        {7, "DP objective invariant across skeleton roots", criterion_root_invariance},
        {8, "pairs + DP wall time fits H^2(log H + N - 3)", criterion_complexity_scaling},
        {9, "end-to-end determinism of CLI artifacts", criterion_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const std::string detail = c.run();
            std::printf("[PASS] criterion %d: %s (%s; %.2f s)\n", c.id, c.title, detail.c_str(),
                        seconds_since(t0));
        } catch (const std::exception& e) {
            ++failures;
            std::printf("[FAIL] criterion %d: %s (%s)\n", c.id, c.title, e.what());
        }
        std::fflush(stdout);
    }
    if (failures) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures;
}
