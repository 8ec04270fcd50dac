// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aspread/ensemble.hpp"
#include "aspread/lobes.hpp"
#include "aspread/model.hpp"
#include "aspread/pas.hpp"
#include "aspread/sounder.hpp"
#include "aspread/stats.hpp"

namespace aspread {

// Canonical interchange header for directional-record CSV. Bit-exact: every
// emitted file starts with this line and every ingested file must match it.
// An empty power_dbm field means the dwell measured below the noise floor.
inline constexpr std::string_view kRecordsCsvHeader =
    "link_id,frequency_ghz,condition,tx_az_deg,tx_el_deg,rx_az_deg,rx_el_deg,power_dbm,"
    "tx_gain_dbi,rx_gain_dbi";

// Shortest decimal representation that round-trips the exact double —
// deterministic across runs and platforms, used by every machine-readable
// emitter.
std::string format_double(double value);

// Ingestion result: validated records plus non-fatal warnings (e.g. azimuth
// wrapped into range). Hard violations throw std::runtime_error naming the
// source, row and column of the first offence.
struct IngestResult {
    std::vector<DirectionalRecord> records;
    std::vector<std::string> warnings;
};

IngestResult parse_records_csv(std::string_view text, std::string_view source_name);
IngestResult read_records_csv(const std::filesystem::path& path);
std::string records_to_csv(std::span<const DirectionalRecord> records);
void write_records_csv(const std::filesystem::path& path,
                       std::span<const DirectionalRecord> records);

// PAS JSON: {link_id, plane, resolution_deg, cuts: [{zenith_deg,
// bins: [power_mw|null], measured: [bool], below_noise: [bool]}]}.
// bins[i] is null for absent and below-noise bins; the below_noise array
// distinguishes dwelled-but-silent bins from never-dwelled ones.
std::string pas_to_json_text(const PowerAngularSpectrum& pas);
PowerAngularSpectrum pas_from_json_text(std::string_view text);

// Lobe-dataset JSON envelope:
//   {format: "aspread-lobes", version: 1, links: [{link_id, frequency_ghz,
//    condition, targets?: {asa_deg, asd_deg, zsa_deg, zsd_deg},
//    planes: [{plane, cuts: [{zenith_deg, lobes: [...]}]}]}]}
// Each lobe object is {lobe_index, start_deg, end_deg, peak_power_mw,
// members: [[deg, mw]]}; its elevation cut and plane come from the envelope.
std::string lobes_to_json_text(std::span<const LinkLobes> links);
std::vector<LinkLobes> lobes_from_json_text(std::string_view text);
std::vector<LinkLobes> read_lobes_json(const std::filesystem::path& path);

// Synthetic-environment JSON: {link_id?, frequency_ghz, condition,
// noise_floor_dbm, subpaths: [{power_mw, delay_ns, aod_deg, zod_deg,
// aoa_deg, zoa_deg}]}. Unknown keys are errors.
SyntheticEnvironment environment_from_json_text(std::string_view text);
SyntheticEnvironment read_environment_json(const std::filesystem::path& path);
std::string environment_to_json_text(const SyntheticEnvironment& env);

// Summary table (one row per metric x scope x condition x frequency cell).
// Columns: metric,scope,condition,frequency_ghz,mu_lg,sigma_lg,
// expectation_deg,n_samples — numeric fields empty when n_samples == 0.
std::string summaries_to_csv(std::span<const LogNormalSummary> rows);
std::vector<LogNormalSummary> summaries_from_csv(std::string_view text,
                                                 std::string_view source_name);
std::vector<LogNormalSummary> read_summary_csv(const std::filesystem::path& path);
std::string summaries_to_json_text(std::span<const LogNormalSummary> rows);

// Per-link AS samples. Columns:
// link_id,frequency_ghz,condition,metric,scope,lobe_index,as_deg
// (lobe_index empty for omni scope).
struct PerLinkAsRow {
    ASValue value;
    double frequency_ghz = 0.0;
    Condition condition = Condition::los;
};
std::string per_link_rows_to_csv(std::span<const PerLinkAsRow> rows);
std::vector<PerLinkAsRow> per_link_rows_from_csv(std::string_view text,
                                                 std::string_view source_name);
std::vector<PerLinkAsRow> read_per_link_csv(const std::filesystem::path& path);
std::string per_link_rows_to_json_text(std::span<const PerLinkAsRow> rows);

// Two-column CDF CSV: value_deg,cumulative_probability.
std::string cdf_to_csv(std::span<const std::pair<double, double>> points);

// Utility: read/write a whole file. write_text_file creates parent
// directories and writes atomically-enough for this tool (truncate+write).
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

} // namespace aspread
