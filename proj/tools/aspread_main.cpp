// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "aspread/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"aspread — angular-spread statistics for directional channel measurements"};
    app.require_subcommand(1);

    aspread::CliOverrides overrides;
    std::optional<std::string> config_path;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", overrides.input, "Input file");
        cmd->add_option("--output-dir", overrides.output_dir,
                        "Directory output files are written to (default: .)");
        cmd->add_option("--frequency", overrides.frequency_ghz, "Carrier frequency in GHz");
        cmd->add_option("--threshold-db", overrides.threshold_db,
                        "Lobe segmentation threshold below the PAS peak, in dB (default: 10)");
        cmd->add_option("--resolution-deg", overrides.resolution_deg,
                        "PAS azimuth grid resolution in degrees; must divide 360 (default: 1)");
        cmd->add_option("--seed", overrides.seed, "Deterministic RNG seed (default: 1)");
        cmd->add_option("--format", overrides.format,
                        "Summary-style output format: csv or json (default: csv)");
        cmd->add_option("--config", config_path,
                        "JSON config file (CLI flags override its values)");
    };

    add_common(app.add_subcommand(
        "stats", "Angular-spread statistics from dwell records (CSV) or a lobe dataset (JSON)"));
    add_common(app.add_subcommand(
        "compare3gpp", "Compare an omni summary against the TR 38.901 InH-Office model"));
    add_common(app.add_subcommand(
        "simulate", "Run the sounder digital twin over a synthetic environment (JSON)"));
    add_common(app.add_subcommand(
        "ensemble", "Generate a Monte Carlo link ensemble with prescribed log-normal spreads"));
    add_common(app.add_subcommand(
        "cdf", "Emit per-metric empirical CDF files from a per-link AS table"));

    CLI11_PARSE(app, argc, argv);

    try {
        std::optional<std::filesystem::path> config_file;
        if (config_path)
            config_file = *config_path;
        const aspread::RunConfig config = aspread::make_run_config(
            app.get_subcommands().front()->get_name(), config_file, overrides);
        aspread::run_command(config);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
