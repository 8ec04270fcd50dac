// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aspread/ensemble.hpp"
#include "aspread/io.hpp"
#include "aspread/lobes.hpp"
#include "aspread/sounder.hpp"
#include "aspread/stats.hpp"
#include "aspread/tgpp.hpp"

namespace aspread {

// Effective run configuration after merging: defaults < config file < CLI
// flags. Unknown keys in the config file are errors, not warnings.
struct RunConfig {
    std::string command;                 // stats | compare3gpp | simulate | ensemble | cdf
    std::filesystem::path input;
    std::filesystem::path output_dir = ".";
    std::optional<double> frequency_ghz; // compare3gpp model frequency when input rows span one fc
    double threshold_db = 10.0;
    double resolution_deg = 1.0;
    std::uint64_t seed = 1;
    std::string format = "csv";          // csv | json (summary-style outputs)
    bool emit_pas = false;
    bool emit_lobes = false;
    std::optional<AntennaModel> tx_antenna;  // simulate: required (no paper default for HPBW)
    std::optional<AntennaModel> rx_antenna;
    SweepConfig sweep;
    std::optional<EnsembleSpec> ensemble;    // ensemble command parameters
};

// CLI-provided values that override the config file. Only the listed flags
// exist on the command line; structured sections (antenna, sweep, ensemble)
// come from the config file.
struct CliOverrides {
    std::optional<std::string> input;
    std::optional<std::string> output_dir;
    std::optional<double> frequency_ghz;
    std::optional<double> threshold_db;
    std::optional<double> resolution_deg;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
};

// Builds the effective config for a command. config_file (JSON) is optional;
// unknown keys or invalid values raise std::runtime_error.
RunConfig make_run_config(std::string command,
                          const std::optional<std::filesystem::path>& config_file,
                          const CliOverrides& cli);

// Full statistics result for a dataset.
struct StatsOutput {
    std::vector<LogNormalSummary> summary;   // sorted: metric, scope, condition, frequency
    std::vector<PerLinkAsRow> per_link;      // sorted: link, metric, scope, lobe_index
    std::vector<LinkLobes> lobes;            // per-link segmentation result
    std::vector<PowerAngularSpectrum> spectra; // kept only when keep_spectra
    std::vector<std::string> warnings;       // zero-AS exclusions, wrap notices, ...
};

// Record path: group by link -> gain removal -> duplicate-pointing reduction
// (max-combining per plane/cut/bin) -> PAS synthesis -> lobe segmentation ->
// AS -> log-normal fits. Zero-valued AS samples are excluded from fits with a
// logged count; cells left without samples report n_samples = 0. Throws with
// link attribution on per-link failures.
StatsOutput compute_stats_from_records(std::span<const DirectionalRecord> records,
                                       double threshold_db = 10.0, double resolution_deg = 1.0,
                                       bool keep_spectra = false);

// Lobe path: consumes segmentation output (or generated ensembles) directly.
StatsOutput compute_stats_from_lobes(std::span<const LinkLobes> links);

// Comparison row for one omni summary against the TR 38.901 InH model.
struct ComparisonRow {
    Metric metric = Metric::asa;
    Condition condition = Condition::los;
    double frequency_ghz = 0.0;
    double expectation_measured_deg = 0.0;
    double expectation_tgpp_deg = 0.0;
    double delta_deg = 0.0;
};
std::vector<ComparisonRow> compare_summaries(std::span<const LogNormalSummary> rows);
std::string comparisons_to_csv(std::span<const ComparisonRow> rows);
std::string comparisons_to_json_text(std::span<const ComparisonRow> rows);

// Command entry points. Each is a pure function of (input files, config):
// rerunning produces identical output files. Errors raise exceptions; the
// CLI maps them to a nonzero exit status.
void cmd_stats(const RunConfig& config);
void cmd_compare3gpp(const RunConfig& config);
void cmd_simulate(const RunConfig& config);
void cmd_ensemble(const RunConfig& config);
void cmd_cdf(const RunConfig& config);
void run_command(const RunConfig& config);

} // namespace aspread
