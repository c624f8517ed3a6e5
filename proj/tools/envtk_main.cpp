// SPDX-License-Identifier: Apache-2.0
//
// Batch front-end: runs scenario configs and prints the bundled-scenario
// table. Exit codes: 0 all expected verdicts hold, 2 verdict mismatch,
// 1 malformed config or runtime error.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "envtk/scenario.hpp"

namespace {

int run_command(const std::string& config_path, std::optional<long long> grid_override,
                std::optional<std::string> out_override,
                std::optional<unsigned long long> seed_override,
                std::optional<std::string> format_override) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot open config file '" << config_path << "'\n";
        return 1;
    }
    envtk::json raw;
    try {
        raw = envtk::json::parse(in);
    } catch (const envtk::json::parse_error& e) {
        std::cerr << "error: malformed config '" << config_path << "': " << e.what()
                  << "\n";
        return 1;
    }

    try {
        if (grid_override) raw["grid"] = *grid_override;
        if (seed_override) raw["seed"] = *seed_override;
        if (out_override) raw["output_dir"] = *out_override;
        if (format_override) raw["format"] = *format_override;

        const envtk::ScenarioConfig cfg = envtk::parse_config(raw);
        const int code = envtk::run_scenario(cfg);
        if (code == 0)
            std::cout << "ok: all expected verdicts hold (" << cfg.output_dir
                      << "/report.json)\n";
        else
            std::cout << "verdict mismatch: see " << cfg.output_dir << "/report.json\n";
        return code;
    } catch (const envtk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int list_command() {
    const auto& table = envtk::bundled_scenarios();
    std::size_t name_w = 4, anchor_w = 6;
    for (const auto& row : table) {
        name_w = std::max(name_w, std::string(row.name).size());
        anchor_w = std::max(anchor_w, std::string(row.anchor).size());
    }
    std::printf("%-*s  %-*s  %s\n", static_cast<int>(name_w), "name",
                static_cast<int>(anchor_w), "anchor", "expected");
    for (const auto& row : table)
        std::printf("%-*s  %-*s  %s\n", static_cast<int>(name_w), row.name,
                    static_cast<int>(anchor_w), row.anchor, row.expectation);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for envelope conditions, screening menus and "
                 "information pricing"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<long long> grid_override;
    std::optional<std::string> out_override;
    std::optional<unsigned long long> seed_override;
    std::optional<std::string> format_override;

    auto* run = app.add_subcommand("run", "run a scenario config file");
    run->add_option("config", config_path, "path to the scenario JSON config")
        ->required();
    run->add_option("--grid", grid_override, "override the grid size");
    run->add_option("--out", out_override, "override the output directory");
    run->add_option("--seed", seed_override, "override the RNG seed");
    run->add_option("--format", format_override, "report format: json|csv|both")
        ->check(CLI::IsMember({"json", "csv", "both"}));

    auto* list = app.add_subcommand("list", "list bundled scenarios");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) return list_command();
    return run_command(config_path, grid_override, out_override, seed_override,
                       format_override);
}
