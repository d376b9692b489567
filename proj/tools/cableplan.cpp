// Command-line front end: solve | fmm | pairs | report over a scenario config.

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cableplan/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Minimum-cost trunk-and-branch submarine cable network planning"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string mode_flag;
    std::string fmm_source;
    unsigned threads = 1;
    double seed_incumbent = 0.0;
    bool have_seed = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "Scenario config file")->required();
        cmd->add_option("--threads", threads, "Worker threads for the all-pairs solve");
        cmd->add_option("--out", out_dir, "Directory for output artifacts");
        cmd->add_option("--mode", mode_flag, "Override solve mode: merge | three");
        cmd->add_option_function<double>(
            "--seed-incumbent",
            [&](double v) {
                seed_incumbent = v;
                have_seed = true;
            },
            "Seed the topology pruning bound with a known cost");
    };

    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve the scenario end to end");
    add_common(solve_cmd);
    CLI::App* fmm_cmd = app.add_subcommand("fmm", "Dump one distance field as a raster");
    add_common(fmm_cmd);
    fmm_cmd->add_option("--source", fmm_source, "Source point 'x,y' in projected meters");
    CLI::App* pairs_cmd = app.add_subcommand("pairs", "Precompute and cache the cost matrix");
    add_common(pairs_cmd);
    CLI::App* report_cmd = app.add_subcommand("report", "Pretty-print a stored solution");
    add_common(report_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        const cableplan::ScenarioConfig cfg = cableplan::load_scenario_file(config_path);
        cableplan::RunOverrides ov;
        ov.threads = threads == 0 ? std::thread::hardware_concurrency() : threads;
        ov.out_dir = out_dir;
        ov.config_dir = std::filesystem::path(config_path).parent_path().string();
        ov.fmm_source = fmm_source;
        if (have_seed) ov.seed_incumbent = seed_incumbent;
        if (!mode_flag.empty()) {
            if (mode_flag == "merge")
                ov.mode = cableplan::BranchMode::merge_allowed;
            else if (mode_flag == "three")
                ov.mode = cableplan::BranchMode::three_branch_only;
            else
                throw cableplan::InputError("--mode must be 'merge' or 'three'");
        }

        if (solve_cmd->parsed()) return cableplan::run_solve(cfg, ov, std::cerr);
        if (fmm_cmd->parsed()) return cableplan::run_fmm(cfg, ov, std::cerr);
        if (pairs_cmd->parsed()) return cableplan::run_pairs(cfg, ov, std::cerr);
        if (report_cmd->parsed()) return cableplan::run_report(cfg, ov, std::cout, std::cerr);
    } catch (const cableplan::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
