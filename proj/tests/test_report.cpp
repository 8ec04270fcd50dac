// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aspread/angles.hpp"
#include "aspread/io.hpp"
#include "aspread/report.hpp"

using namespace aspread;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test case, removed on destruction.
struct ScratchDir {
    fs::path path;
    explicit ScratchDir(const std::string& name)
        : path(fs::temp_directory_path() / ("aspread-report-" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path); }
    fs::path file(const std::string& name, std::string_view content) const {
        const fs::path p = path / name;
        write_text_file(p, content);
        return p;
    }
};

DirectionalRecord rec(const std::string& link, double freq, Condition cond, double tx_az,
                      double rx_az, std::optional<double> power_dbm, double rx_el = 90.0,
                      double tx_el = 90.0) {
    return DirectionalRecord::make(link, freq, cond, tx_az, tx_el, rx_az, rx_el, power_dbm,
                                   0.0, 0.0);
}

const LogNormalSummary* find_cell(std::span<const LogNormalSummary> rows, Metric m, Scope s) {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const LogNormalSummary& r) {
        return r.metric == m && r.scope == s;
    });
    return it == rows.end() ? nullptr : &*it;
}

LogNormalSummary omni_summary(Metric m, Condition c, double freq, double mu, double sigma,
                              std::size_t n) {
    LogNormalSummary row;
    row.metric = m;
    row.scope = Scope::omni;
    row.condition = c;
    row.frequency_ghz = freq;
    row.mu_lg = mu;
    row.sigma_lg = sigma;
    row.expectation_deg = lognormal_expectation_deg(mu, sigma);
    row.n_samples = n;
    return row;
}

} // namespace

TEST_SUITE("report") {

TEST_CASE("record path rejects empty input and mixed per-link frequency") {
    CHECK_THROWS_WITH_AS(compute_stats_from_records({}),
                         doctest::Contains("no records to analyze"), std::runtime_error);

    const std::vector<DirectionalRecord> mixed{
        rec("L1", 6.75, Condition::los, 0, 0, -50.0),
        rec("L1", 16.95, Condition::los, 0, 30, -50.0),
    };
    CHECK_THROWS_WITH_AS(compute_stats_from_records(mixed),
                         doctest::Contains("link L1: mixed frequencies within one link"),
                         std::runtime_error);

    const std::vector<DirectionalRecord> mixed_cond{
        rec("L1", 6.75, Condition::los, 0, 0, -50.0),
        rec("L1", 6.75, Condition::nlos, 0, 30, -50.0),
    };
    CHECK_THROWS_WITH_AS(compute_stats_from_records(mixed_cond),
                         doctest::Contains("mixed LOS/NLOS conditions"), std::runtime_error);
}

TEST_CASE("duplicate pointings reduce to the strongest dwell") {
    // Two dwells land in the same AOA bin; the spectrum must keep the max,
    // not throw the duplicate-bin error or sum the powers.
    const std::vector<DirectionalRecord> records{
        rec("L", 6.75, Condition::los, 0, 10, -50.0),
        rec("L", 6.75, Condition::los, 0, 10, -47.0),
        rec("L", 6.75, Condition::los, 0, 40, -50.0),
    };
    const StatsOutput out = compute_stats_from_records(records, 10.0, 1.0, true);
    REQUIRE(out.spectra.size() == 2);
    CHECK(out.spectra[0].plane == Plane::aoa);
    CHECK(out.spectra[1].plane == Plane::aod);
    const auto& cut = out.spectra[0].cuts.at(0);
    CHECK(cut.state[10] == BinState::measured);
    CHECK(cut.power_mw[10] == db_to_linear(-47.0));
    CHECK(cut.power_mw[40] == db_to_linear(-50.0));
    // All three records point the TX the same way: one AOD bin survives.
    int measured = 0;
    for (const auto s : out.spectra[1].cuts.at(0).state)
        measured += s == BinState::measured;
    CHECK(measured == 1);
    CHECK(out.spectra[1].cuts.at(0).power_mw[0] == db_to_linear(-47.0));
}

TEST_CASE("zero-valued AS samples are excluded from fits but kept per link") {
    // Single elevation cut and a single AOD direction: ZSA, ZSD, and ASD are
    // all exactly zero while ASA is well-defined. A below-noise dwell keeps
    // interpolation from bridging the quiet sector.
    const std::vector<DirectionalRecord> records{
        rec("L1", 6.75, Condition::los, 0, 0, -50.0),
        rec("L1", 6.75, Condition::los, 0, 30, -53.0),
        rec("L1", 6.75, Condition::los, 180, 200, std::nullopt),
    };
    const StatsOutput out = compute_stats_from_records(records);

    const std::string expected_zsa =
        "cell ZSA/omni/LOS/6.75 GHz: excluded 1 zero-valued AS sample(s) from the "
        "log-normal fit";
    const std::string expected_asd =
        "cell ASD/omni/LOS/6.75 GHz: excluded 1 zero-valued AS sample(s) from the "
        "log-normal fit";
    CHECK(std::find(out.warnings.begin(), out.warnings.end(), expected_zsa) !=
          out.warnings.end());
    CHECK(std::find(out.warnings.begin(), out.warnings.end(), expected_asd) !=
          out.warnings.end());

    const auto* zsa = find_cell(out.summary, Metric::zsa, Scope::omni);
    REQUIRE(zsa != nullptr);
    CHECK(zsa->n_samples == 0);
    const auto* asa = find_cell(out.summary, Metric::asa, Scope::omni);
    REQUIRE(asa != nullptr);
    CHECK(asa->n_samples == 1);
    CHECK(asa->sigma_lg == 0.0);

    // The raw zero sample is still present in the per-link table.
    const auto zero_row = std::find_if(
        out.per_link.begin(), out.per_link.end(), [](const PerLinkAsRow& r) {
            return r.value.metric == Metric::zsa && r.value.scope == Scope::omni;
        });
    REQUIRE(zero_row != out.per_link.end());
    CHECK(zero_row->value.value_deg == 0.0);
}

TEST_CASE("comparison rows match the reference model at published inputs") {
    // Measured expectation set exactly to the model value: delta is exactly 0.
    LogNormalSummary aligned = omni_summary(Metric::asa, Condition::los, 6.75, 1.0, 0.0, 5);
    aligned.expectation_deg = tgpp_expectation_deg(6.75, Metric::asa, Condition::los);

    // Published measured parameters for one cell: the gap to the model is a
    // frozen reference number.
    const LogNormalSummary zsa_nlos =
        omni_summary(Metric::zsa, Condition::nlos, 6.75, 1.01, 0.29, 28);

    LogNormalSummary lobe_row = omni_summary(Metric::asd, Condition::los, 6.75, 1.0, 0.1, 7);
    lobe_row.scope = Scope::lobe;
    LogNormalSummary empty_row = omni_summary(Metric::zsd, Condition::los, 6.75, 0.0, 0.0, 0);

    const std::vector<LogNormalSummary> rows{aligned, zsa_nlos, lobe_row, empty_row};
    const auto comparisons = compare_summaries(rows);
    REQUIRE(comparisons.size() == 2); // lobe-scope and empty rows are skipped

    CHECK(comparisons[0].metric == Metric::asa);
    CHECK(comparisons[0].delta_deg == 0.0);

    CHECK(comparisons[1].metric == Metric::zsa);
    CHECK(comparisons[1].condition == Condition::nlos);
    CHECK(comparisons[1].expectation_measured_deg ==
          doctest::Approx(lognormal_expectation_deg(1.01, 0.29)).epsilon(1e-12));
    CHECK(comparisons[1].delta_deg ==
          doctest::Approx(18.54277021239593).epsilon(1e-9));

    const std::vector<LogNormalSummary> skipped{lobe_row, empty_row};
    CHECK_THROWS_WITH_AS(compare_summaries(skipped),
                         doctest::Contains("no omni summary rows with samples to compare"),
                         std::runtime_error);

    const std::string csv = comparisons_to_csv(comparisons);
    CHECK(csv.starts_with("metric,condition,frequency_ghz,expectation_measured_deg,"
                          "expectation_tgpp_deg,delta_deg"));
    CHECK(csv.find("ASA,LOS,6.75,") != std::string::npos);
}

TEST_CASE("run config: defaults, config file, CLI precedence") {
    const RunConfig defaults = make_run_config("stats", std::nullopt, {});
    CHECK(defaults.threshold_db == 10.0);
    CHECK(defaults.resolution_deg == 1.0);
    CHECK(defaults.seed == 1);
    CHECK(defaults.format == "csv");
    CHECK(defaults.output_dir == ".");
    CHECK_FALSE(defaults.frequency_ghz.has_value());

    ScratchDir dir("config");
    const fs::path cfg_file = dir.file("run.json", R"({
      "input": "from_file.csv",
      "threshold_db": 6,
      "seed": 42,
      "format": "json",
      "emit_lobes": true
    })");

    const RunConfig from_file = make_run_config("stats", cfg_file, {});
    CHECK(from_file.input == "from_file.csv");
    CHECK(from_file.threshold_db == 6.0);
    CHECK(from_file.seed == 42);
    CHECK(from_file.format == "json");
    CHECK(from_file.emit_lobes);

    CliOverrides cli;
    cli.input = "from_cli.csv";
    cli.threshold_db = 8.0;
    cli.format = "csv";
    const RunConfig merged = make_run_config("stats", cfg_file, cli);
    CHECK(merged.input == "from_cli.csv");
    CHECK(merged.threshold_db == 8.0);
    CHECK(merged.format == "csv");
    CHECK(merged.seed == 42); // not overridden: file value survives
}

TEST_CASE("run config: validation errors") {
    CHECK_THROWS_WITH_AS(make_run_config("bogus", std::nullopt, {}),
                         doctest::Contains("unknown command 'bogus'"), std::runtime_error);

    ScratchDir dir("badconfig");
    const fs::path bad_key = dir.file("bad.json", R"({"thresh": 6})");
    CHECK_THROWS_WITH_AS(make_run_config("stats", bad_key, {}),
                         doctest::Contains("unknown key 'thresh'"), std::runtime_error);

    CliOverrides bad_format;
    bad_format.format = "xml";
    CHECK_THROWS_WITH_AS(make_run_config("stats", std::nullopt, bad_format),
                         doctest::Contains("format must be 'csv' or 'json', got 'xml'"),
                         std::runtime_error);

    CliOverrides bad_threshold;
    bad_threshold.threshold_db = -3.0;
    CHECK_THROWS_WITH_AS(make_run_config("stats", std::nullopt, bad_threshold),
                         doctest::Contains("threshold-db must be finite and > 0"),
                         std::runtime_error);

    CliOverrides bad_resolution;
    bad_resolution.resolution_deg = 0.0;
    CHECK_THROWS_WITH_AS(make_run_config("stats", std::nullopt, bad_resolution),
                         doctest::Contains("resolution-deg must be finite and > 0"),
                         std::runtime_error);
}

TEST_CASE("run config: ensemble section inherits top-level seed and frequency") {
    ScratchDir dir("ensemblecfg");
    const fs::path cfg_file = dir.file("run.json", R"({
      "seed": 7,
      "ensemble": {
        "n_links": 3,
        "condition": "NLOS",
        "frequency_ghz": 6.75,
        "targets": {
          "asa": {"mu_lg": 1.0, "sigma_lg": 0.0},
          "asd": {"mu_lg": 1.0, "sigma_lg": 0.0},
          "zsa": {"mu_lg": 1.0, "sigma_lg": 0.0},
          "zsd": {"mu_lg": 1.0, "sigma_lg": 0.0}
        }
      }
    })");
    CliOverrides cli;
    cli.frequency_ghz = 16.95;
    const RunConfig cfg = make_run_config("ensemble", cfg_file, cli);
    REQUIRE(cfg.ensemble.has_value());
    CHECK(cfg.ensemble->seed == 7);
    CHECK(cfg.ensemble->n_links == 3);
    CHECK(cfg.ensemble->condition == Condition::nlos);
    CHECK(cfg.ensemble->frequency_ghz == 16.95); // CLI frequency wins
    CHECK(cfg.ensemble->targets[0] == std::pair{1.0, 0.0});

    const fs::path bad = dir.file("bad.json", R"({
      "ensemble": {"n_links": 3, "condition": "NLOS",
                   "targets": {"asa": {"mu_lg": 1.0, "sigma_lg": 0.0}}}
    })");
    CHECK_THROWS_WITH_AS(make_run_config("ensemble", bad, {}),
                         doctest::Contains("missing key 'asd'"), std::runtime_error);
}

TEST_CASE("ensemble command chains into the stats command") {
    // Zero-sigma targets make every link's spread exactly 10 degrees, so the
    // lobe-path refit must return mu = 1, sigma = 0 to float precision.
    ScratchDir dir("chain");
    RunConfig gen = make_run_config("ensemble", std::nullopt, {});
    EnsembleSpec spec;
    spec.n_links = 3;
    spec.condition = Condition::nlos;
    spec.frequency_ghz = 6.75;
    spec.targets = {{{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}}};
    gen.ensemble = spec;
    gen.seed = 5;
    gen.ensemble->seed = 5;
    gen.output_dir = dir.path;
    cmd_ensemble(gen);
    REQUIRE(fs::exists(dir.path / "ensemble_lobes.json"));
    REQUIRE(fs::exists(dir.path / "ensemble_records.csv"));

    // Lossless path: lobes JSON reproduces the targets exactly.
    RunConfig stats = make_run_config("stats", std::nullopt, {});
    stats.input = dir.path / "ensemble_lobes.json";
    stats.output_dir = dir.path / "from_lobes";
    cmd_stats(stats);
    const auto summary = read_summary_csv(dir.path / "from_lobes" / "summary.csv");
    for (const Metric metric : {Metric::asa, Metric::asd, Metric::zsa, Metric::zsd}) {
        const auto* cell = find_cell(summary, metric, Scope::omni);
        REQUIRE(cell != nullptr);
        CHECK(cell->n_samples == 3);
        CHECK(cell->mu_lg == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::abs(cell->sigma_lg) < 1e-9);
    }

    // Dwell-record projection: quantized to the 1-degree grid, so only close.
    RunConfig stats2 = make_run_config("stats", std::nullopt, {});
    stats2.input = dir.path / "ensemble_records.csv";
    stats2.output_dir = dir.path / "from_records";
    cmd_stats(stats2);
    const auto summary2 = read_summary_csv(dir.path / "from_records" / "summary.csv");
    const auto* asa = find_cell(summary2, Metric::asa, Scope::omni);
    REQUIRE(asa != nullptr);
    CHECK(asa->n_samples == 3);
    CHECK(asa->mu_lg == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("stats command writes the full output set") {
    ScratchDir dir("statsout");
    std::vector<DirectionalRecord> records;
    // Two links with distinct azimuth spreads; few distinct AOD pointings.
    for (double az : {0.0, 20.0, 40.0})
        records.push_back(rec("A", 6.75, Condition::los, 10, az, -50.0 - az / 10.0));
    records.push_back(rec("A", 6.75, Condition::los, 100, 200, std::nullopt));
    for (double az : {100.0, 110.0})
        records.push_back(rec("B", 6.75, Condition::los, 10, az, -55.0));
    records.push_back(rec("B", 6.75, Condition::los, 100, 300, std::nullopt));
    const fs::path input = dir.file("records.csv", records_to_csv(records));

    RunConfig cfg = make_run_config("stats", std::nullopt, {});
    cfg.input = input;
    cfg.output_dir = dir.path / "out";
    cfg.emit_lobes = true;
    cfg.emit_pas = true;
    cmd_stats(cfg);

    CHECK(fs::exists(cfg.output_dir / "summary.csv"));
    CHECK(fs::exists(cfg.output_dir / "per_link.csv"));
    CHECK(fs::exists(cfg.output_dir / "cdf_asa.csv"));
    CHECK(fs::exists(cfg.output_dir / "lobes.json"));
    CHECK(fs::exists(cfg.output_dir / "pas_A_aoa.json"));
    CHECK(fs::exists(cfg.output_dir / "pas_B_aod.json"));

    const auto summary = read_summary_csv(cfg.output_dir / "summary.csv");
    const auto* asa = find_cell(summary, Metric::asa, Scope::omni);
    REQUIRE(asa != nullptr);
    CHECK(asa->n_samples == 2);
    const auto per_link = read_per_link_csv(cfg.output_dir / "per_link.csv");
    CHECK(per_link.size() >= 8); // 4 omni metrics per link at minimum
    const auto lobes = read_lobes_json(cfg.output_dir / "lobes.json");
    CHECK(lobes.size() == 2);

    // Re-running the command reproduces every byte.
    RunConfig rerun = cfg;
    rerun.output_dir = dir.path / "out2";
    cmd_stats(rerun);
    for (const char* name : {"summary.csv", "per_link.csv", "cdf_asa.csv", "lobes.json"})
        CHECK(read_text_file(cfg.output_dir / name) == read_text_file(rerun.output_dir / name));
}

TEST_CASE("stats command output matches the frozen golden files") {
    const fs::path data_dir{ASPREAD_TESTS_DATA_DIR};
    ScratchDir dir("golden");
    RunConfig cfg = make_run_config("stats", std::nullopt, {});
    cfg.input = data_dir / "golden_records.csv";
    cfg.output_dir = dir.path / "out";
    cmd_stats(cfg);

    const fs::path golden = data_dir / "golden";
    std::set<std::string> produced, expected;
    for (const auto& entry : fs::directory_iterator(cfg.output_dir))
        produced.insert(entry.path().filename().string());
    for (const auto& entry : fs::directory_iterator(golden))
        expected.insert(entry.path().filename().string());
    CHECK(produced == expected);
    for (const std::string& name : expected) {
        CAPTURE(name);
        CHECK(read_text_file(cfg.output_dir / name) == read_text_file(golden / name));
    }
}

TEST_CASE("compare3gpp command filters by frequency") {
    ScratchDir dir("compare");
    const std::vector<LogNormalSummary> rows{
        omni_summary(Metric::asa, Condition::los, 6.75, 1.54, 0.39, 28),
        omni_summary(Metric::asd, Condition::los, 6.75, 1.84, 0.12, 28),
        omni_summary(Metric::zsa, Condition::los, 6.75, 1.21, 0.07, 28),
        omni_summary(Metric::asa, Condition::los, 16.95, 1.14, 0.44, 19),
    };
    const fs::path input = dir.file("summary.csv", summaries_to_csv(rows));

    RunConfig cfg = make_run_config("compare3gpp", std::nullopt, {});
    cfg.input = input;
    cfg.output_dir = dir.path / "all";
    cmd_compare3gpp(cfg);
    auto count_rows = [](const std::string& text) {
        return std::count(text.begin(), text.end(), '\n') - 1;
    };
    CHECK(count_rows(read_text_file(cfg.output_dir / "comparison.csv")) == 4);

    cfg.frequency_ghz = 6.75;
    cfg.output_dir = dir.path / "low";
    cmd_compare3gpp(cfg);
    CHECK(count_rows(read_text_file(cfg.output_dir / "comparison.csv")) == 3);

    cfg.frequency_ghz = 99.0;
    CHECK_THROWS_WITH_AS(cmd_compare3gpp(cfg),
                         doctest::Contains("no summary rows at --frequency 99"),
                         std::runtime_error);
}

TEST_CASE("cdf command writes one file per metric with samples") {
    ScratchDir dir("cdf");
    std::vector<PerLinkAsRow> rows;
    PerLinkAsRow row;
    row.frequency_ghz = 6.75;
    row.condition = Condition::los;
    row.value.metric = Metric::asa;
    row.value.scope = Scope::omni;
    row.value.link_id = "L1";
    row.value.value_deg = 1.0;
    rows.push_back(row);
    row.value.link_id = "L2";
    row.value.value_deg = 2.0;
    rows.push_back(row);
    row.value.metric = Metric::zsa;
    row.value.scope = Scope::lobe;
    row.value.lobe_index = 0;
    rows.push_back(row);
    const fs::path input = dir.file("per_link.csv", per_link_rows_to_csv(rows));

    RunConfig cfg = make_run_config("cdf", std::nullopt, {});
    cfg.input = input;
    cfg.output_dir = dir.path / "out";
    cmd_cdf(cfg);
    CHECK(read_text_file(cfg.output_dir / "cdf_asa.csv") ==
          "value_deg,cumulative_probability\n1,0.5\n2,1\n");
    CHECK_FALSE(fs::exists(cfg.output_dir / "cdf_zsa.csv")); // lobe rows don't count
    CHECK_FALSE(fs::exists(cfg.output_dir / "cdf_zsd.csv"));

    // Only lobe-scope rows: nothing to plot.
    const fs::path lobe_only = dir.file("lobe_only.csv",
                                        per_link_rows_to_csv(std::vector{rows[2]}));
    cfg.input = lobe_only;
    CHECK_THROWS_WITH_AS(cmd_cdf(cfg), doctest::Contains("cdf: no omni-scope samples"),
                         std::runtime_error);
}

TEST_CASE("run_command dispatches and rejects unknown commands") {
    RunConfig bad;
    bad.command = "bogus";
    CHECK_THROWS_WITH_AS(run_command(bad), doctest::Contains("unknown command 'bogus'"),
                         std::runtime_error);

    ScratchDir dir("dispatch");
    RunConfig missing = make_run_config("stats", std::nullopt, {});
    CHECK_THROWS_WITH_AS(run_command(missing), doctest::Contains("--input is required"),
                         std::runtime_error);
    missing.input = dir.path / "absent.csv";
    CHECK_THROWS_WITH_AS(run_command(missing), doctest::Contains("does not exist"),
                         std::runtime_error);
}

} // TEST_SUITE("report")
