// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#include "aspread/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "aspread/angles.hpp"
#include "aspread/pas.hpp"

namespace aspread {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

json parse_json(std::string_view text, std::string_view source) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string(source) + ": invalid JSON: " + e.what());
    }
}

void check_keys(const json& obj, std::string_view what,
                std::initializer_list<std::string_view> required,
                std::initializer_list<std::string_view> optional) {
    if (!obj.is_object())
        fail(std::string(what) + ": expected a JSON object");
    for (const auto& key : required)
        if (!obj.contains(key))
            fail(std::string(what) + ": missing key '" + std::string(key) + "'");
    for (const auto& [key, value] : obj.items()) {
        const auto in = [&key](std::initializer_list<std::string_view> set) {
            return std::find(set.begin(), set.end(), key) != set.end();
        };
        if (!in(required) && !in(optional))
            fail(std::string(what) + ": unknown key '" + key + "'");
    }
}

double json_number(const json& obj, std::string_view what, std::string_view key) {
    const json& v = obj.at(std::string(key));
    if (!v.is_number())
        fail(std::string(what) + ": key '" + std::string(key) + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        fail(std::string(what) + ": key '" + std::string(key) + "' must be finite");
    return d;
}

long long json_integer(const json& obj, std::string_view what, std::string_view key) {
    const json& v = obj.at(std::string(key));
    if (!v.is_number_integer())
        fail(std::string(what) + ": key '" + std::string(key) + "' must be an integer");
    return v.get<long long>();
}

std::string json_string(const json& obj, std::string_view what, std::string_view key) {
    const json& v = obj.at(std::string(key));
    if (!v.is_string())
        fail(std::string(what) + ": key '" + std::string(key) + "' must be a string");
    return v.get<std::string>();
}

AntennaModel antenna_from_json(const json& j, std::string_view what) {
    check_keys(j, what, {"hpbw_az_deg", "hpbw_el_deg"},
               {"boresight_gain_dbi", "sidelobe_floor_db"});
    AntennaModel m;
    m.hpbw_az_deg = json_number(j, what, "hpbw_az_deg");
    m.hpbw_el_deg = json_number(j, what, "hpbw_el_deg");
    if (j.contains("boresight_gain_dbi"))
        m.boresight_gain_dbi = json_number(j, what, "boresight_gain_dbi");
    if (j.contains("sidelobe_floor_db"))
        m.sidelobe_floor_db = json_number(j, what, "sidelobe_floor_db");
    return m;
}

EnsembleSpec ensemble_from_json(const json& j) {
    check_keys(j, "config ensemble", {"n_links", "condition", "targets"},
               {"frequency_ghz", "lobe_count_range"});
    EnsembleSpec spec;
    const long long n = json_integer(j, "config ensemble", "n_links");
    if (n < 1)
        fail("config ensemble: n_links must be >= 1");
    spec.n_links = static_cast<std::size_t>(n);
    spec.condition = condition_from_string(json_string(j, "config ensemble", "condition"));
    const json& targets = j.at("targets");
    check_keys(targets, "config ensemble targets", {"asa", "asd", "zsa", "zsd"}, {});
    for (const Metric metric : {Metric::asa, Metric::asd, Metric::zsa, Metric::zsd}) {
        std::string key{to_string(metric)};
        std::transform(key.begin(), key.end(), key.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        const json& t = targets.at(key);
        check_keys(t, "config ensemble target " + key, {"mu_lg", "sigma_lg"}, {});
        spec.targets[static_cast<std::size_t>(metric)] = {
            json_number(t, "config ensemble target", "mu_lg"),
            json_number(t, "config ensemble target", "sigma_lg")};
    }
    if (j.contains("frequency_ghz"))
        spec.frequency_ghz = json_number(j, "config ensemble", "frequency_ghz");
    if (j.contains("lobe_count_range")) {
        const json& r = j.at("lobe_count_range");
        if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() ||
            !r[1].is_number_integer())
            fail("config ensemble: lobe_count_range must be a [lo, hi] integer pair");
        spec.lobe_count_range = {r[0].get<int>(), r[1].get<int>()};
    }
    return spec;
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& file) {
    const json j = parse_json(read_text_file(file), file.string());
    try {
        check_keys(j, "config", {},
                   {"input", "output_dir", "frequency_ghz", "threshold_db", "resolution_deg",
                    "seed", "format", "emit_pas", "emit_lobes", "tx_antenna", "rx_antenna",
                    "sweep", "ensemble"});
        if (j.contains("input"))
            cfg.input = json_string(j, "config", "input");
        if (j.contains("output_dir"))
            cfg.output_dir = json_string(j, "config", "output_dir");
        if (j.contains("frequency_ghz"))
            cfg.frequency_ghz = json_number(j, "config", "frequency_ghz");
        if (j.contains("threshold_db"))
            cfg.threshold_db = json_number(j, "config", "threshold_db");
        if (j.contains("resolution_deg"))
            cfg.resolution_deg = json_number(j, "config", "resolution_deg");
        if (j.contains("seed")) {
            const long long seed = json_integer(j, "config", "seed");
            if (seed < 0)
                fail("config: seed must be >= 0");
            cfg.seed = static_cast<std::uint64_t>(seed);
        }
        if (j.contains("format"))
            cfg.format = json_string(j, "config", "format");
        if (j.contains("emit_pas")) {
            if (!j.at("emit_pas").is_boolean())
                fail("config: emit_pas must be a boolean");
            cfg.emit_pas = j.at("emit_pas").get<bool>();
        }
        if (j.contains("emit_lobes")) {
            if (!j.at("emit_lobes").is_boolean())
                fail("config: emit_lobes must be a boolean");
            cfg.emit_lobes = j.at("emit_lobes").get<bool>();
        }
        if (j.contains("tx_antenna"))
            cfg.tx_antenna = antenna_from_json(j.at("tx_antenna"), "config tx_antenna");
        if (j.contains("rx_antenna"))
            cfg.rx_antenna = antenna_from_json(j.at("rx_antenna"), "config rx_antenna");
        if (j.contains("sweep")) {
            const json& s = j.at("sweep");
            check_keys(s, "config sweep", {},
                       {"search_step_deg", "rx_sweep_step_deg", "coarse_step_az_deg",
                        "coarse_step_el_deg", "rx_elevation_cuts", "tx_tilt_steps",
                        "aod_margin_db"});
            if (s.contains("search_step_deg"))
                cfg.sweep.search_step_deg = json_number(s, "config sweep", "search_step_deg");
            if (s.contains("rx_sweep_step_deg"))
                cfg.sweep.rx_sweep_step_deg = json_number(s, "config sweep", "rx_sweep_step_deg");
            if (s.contains("coarse_step_az_deg"))
                cfg.sweep.coarse_step_az_deg =
                    json_number(s, "config sweep", "coarse_step_az_deg");
            if (s.contains("coarse_step_el_deg"))
                cfg.sweep.coarse_step_el_deg =
                    json_number(s, "config sweep", "coarse_step_el_deg");
            if (s.contains("rx_elevation_cuts"))
                cfg.sweep.rx_elevation_cuts =
                    static_cast<int>(json_integer(s, "config sweep", "rx_elevation_cuts"));
            if (s.contains("tx_tilt_steps"))
                cfg.sweep.tx_tilt_steps =
                    static_cast<int>(json_integer(s, "config sweep", "tx_tilt_steps"));
            if (s.contains("aod_margin_db"))
                cfg.sweep.aod_margin_db = json_number(s, "config sweep", "aod_margin_db");
        }
        if (j.contains("ensemble"))
            cfg.ensemble = ensemble_from_json(j.at("ensemble"));
    } catch (const std::invalid_argument& e) {
        fail(file.string() + ": " + e.what());
    } catch (const std::runtime_error& e) {
        fail(file.string() + ": " + e.what());
    }
}

std::string lower(std::string_view s) {
    std::string out{s};
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// File-name-safe link id (link ids may hold arbitrary non-comma text).
std::string sanitize_id(std::string_view id) {
    std::string out{id};
    for (char& c : out)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_')
            c = '_';
    return out;
}

constexpr std::array<Metric, 4> kMetrics{Metric::asa, Metric::asd, Metric::zsa, Metric::zsd};

using CellKey = std::tuple<int, int, int, double>; // metric, scope, condition, frequency

CellKey cell_key(Metric m, Scope s, Condition c, double f) {
    return {static_cast<int>(m), static_cast<int>(s), static_cast<int>(c), f};
}

std::string cell_name(Metric m, Scope s, Condition c, double f) {
    return std::string(to_string(m)) + "/" + std::string(to_string(s)) + "/" +
           std::string(to_string(c)) + "/" + format_double(f) + " GHz";
}

// Pools per-link AS samples into (metric, scope, condition, frequency) cells,
// fits each cell, and emits rows for every metric x scope combination of
// every observed (condition, frequency) pair — empty cells report
// n_samples = 0. Zero-valued AS samples are excluded from fits with a logged
// count (log10 is undefined at 0); the raw samples stay in per_link.
void finish_stats(std::vector<LinkLobes>&& links, StatsOutput& out) {
    std::map<CellKey, std::vector<double>> cells;
    std::map<CellKey, std::size_t> zero_excluded;
    std::set<std::pair<int, double>> cond_freqs;

    const auto add_sample = [&](Metric m, Scope s, const LinkLobes& link, double value) {
        const CellKey key = cell_key(m, s, link.condition, link.frequency_ghz);
        if (value > 0.0)
            cells[key].push_back(value);
        else
            ++zero_excluded[key];
    };

    for (const LinkLobes& link : links) {
        cond_freqs.emplace(static_cast<int>(link.condition), link.frequency_ghz);
        for (const Metric metric : kMetrics) {
            const auto& lobes =
                metric_plane(metric) == Plane::aoa ? link.aoa_lobes : link.aod_lobes;
            if (lobes.empty())
                continue;
            try {
                ASValue v = omni_as(lobes, metric, link.link_id);
                add_sample(metric, Scope::omni, link, v.value_deg);
                out.per_link.push_back({std::move(v), link.frequency_ghz, link.condition});
            } catch (const degenerate_spread_error& e) {
                out.warnings.push_back("link " + link.link_id + " " +
                                       std::string(to_string(metric)) +
                                       " omni: " + e.what() + " — sample excluded");
            }
            // Per-lobe zenith spreads are identically zero (a lobe lives on one
            // elevation cut), so lobe scope carries azimuth metrics only.
            if (!metric_is_azimuthal(metric))
                continue;
            for (const SpatialLobe& lobe : lobes) {
                try {
                    ASValue v = lobe_as(lobe, metric, link.link_id);
                    add_sample(metric, Scope::lobe, link, v.value_deg);
                    out.per_link.push_back({std::move(v), link.frequency_ghz, link.condition});
                } catch (const degenerate_spread_error& e) {
                    out.warnings.push_back("link " + link.link_id + " " +
                                           std::string(to_string(metric)) + " lobe " +
                                           std::to_string(lobe.lobe_index) + ": " + e.what() +
                                           " — sample excluded");
                }
            }
        }
    }

    for (const Metric metric : kMetrics) {
        for (const Scope scope : {Scope::omni, Scope::lobe}) {
            for (const auto& [cond_int, freq] : cond_freqs) {
                const Condition cond = static_cast<Condition>(cond_int);
                LogNormalSummary s;
                s.metric = metric;
                s.scope = scope;
                s.condition = cond;
                s.frequency_ghz = freq;
                const CellKey key = cell_key(metric, scope, cond, freq);
                if (const auto it = cells.find(key); it != cells.end()) {
                    const auto [mu, sigma] = lognormal_fit(it->second);
                    s.mu_lg = mu;
                    s.sigma_lg = sigma;
                    s.expectation_deg = lognormal_expectation_deg(mu, sigma);
                    s.n_samples = it->second.size();
                }
                if (const auto z = zero_excluded.find(key); z != zero_excluded.end())
                    out.warnings.push_back(
                        "cell " + cell_name(metric, scope, cond, freq) + ": excluded " +
                        std::to_string(z->second) +
                        " zero-valued AS sample(s) from the log-normal fit");
                out.summary.push_back(s);
            }
        }
    }

    std::sort(out.per_link.begin(), out.per_link.end(),
              [](const PerLinkAsRow& a, const PerLinkAsRow& b) {
                  return std::tie(a.value.link_id, a.value.metric, a.value.scope,
                                  a.value.lobe_index) < std::tie(b.value.link_id, b.value.metric,
                                                                 b.value.scope,
                                                                 b.value.lobe_index);
              });
    out.lobes = std::move(links);
}

// Keeps the strongest record per (plane zenith, grid bin): repeated dwells at
// one pointing (e.g. the two TX tilts seen by one RX bin in the AOA plane)
// reduce to the best measurement, and a measured dwell always beats a
// below-noise one.
std::vector<DirectionalRecord> reduce_duplicate_pointings(
    std::span<const DirectionalRecord> records, Plane plane, double resolution_deg) {
    if (!(std::isfinite(resolution_deg) && resolution_deg > 0))
        throw std::invalid_argument("resolution_deg must be finite and > 0");
    const double bins = 360.0 / resolution_deg;
    const auto n_bins = static_cast<std::size_t>(std::llround(bins));
    if (n_bins < 1 || std::abs(bins - static_cast<double>(n_bins)) > 1e-9)
        throw std::invalid_argument("resolution_deg must evenly divide 360");

    std::map<std::pair<double, std::size_t>, std::size_t> best; // (zenith, bin) -> out index
    std::vector<DirectionalRecord> out;
    for (const DirectionalRecord& r : records) {
        const double zenith = plane == Plane::aoa ? r.rx_el_deg : r.tx_el_deg;
        const double azimuth = plane == Plane::aoa ? r.rx_az_deg : r.tx_az_deg;
        const auto key =
            std::make_pair(zenith, pas_bin_index(azimuth, resolution_deg, n_bins));
        const auto [it, inserted] = best.try_emplace(key, out.size());
        if (inserted) {
            out.push_back(r);
            continue;
        }
        DirectionalRecord& cur = out[it->second];
        if (r.power_dbm && (!cur.power_dbm || *r.power_dbm > *cur.power_dbm))
            cur = r;
    }
    return out;
}

void print_warnings(std::span<const std::string> warnings) {
    for (const std::string& w : warnings)
        std::fprintf(stderr, "warning: %s\n", w.c_str());
}

// Human-readable Table-I-style view (2-decimal display, matching published
// table precision); the emitted files keep full precision.
void print_summary_table(std::span<const LogNormalSummary> rows) {
    std::printf("%-6s %-5s %-9s %8s %7s %9s %10s %7s\n", "metric", "scope", "condition",
                "fc_GHz", "mu_lg", "sigma_lg", "E[AS]_deg", "n");
    for (const LogNormalSummary& s : rows) {
        if (s.n_samples > 0)
            std::printf("%-6s %-5s %-9s %8.2f %7.2f %9.2f %10.2f %7zu\n",
                        std::string(to_string(s.metric)).c_str(),
                        std::string(to_string(s.scope)).c_str(),
                        std::string(to_string(s.condition)).c_str(), s.frequency_ghz,
                        round_half_up_2dp(s.mu_lg), round_half_up_2dp(s.sigma_lg),
                        round_half_up_2dp(s.expectation_deg), s.n_samples);
        else
            std::printf("%-6s %-5s %-9s %8.2f %7s %9s %10s %7zu\n",
                        std::string(to_string(s.metric)).c_str(),
                        std::string(to_string(s.scope)).c_str(),
                        std::string(to_string(s.condition)).c_str(), s.frequency_ghz, "-", "-",
                        "-", s.n_samples);
    }
}

void print_comparison_table(std::span<const ComparisonRow> rows) {
    std::printf("%-6s %-9s %8s %12s %13s %10s\n", "metric", "condition", "fc_GHz",
                "E_meas_deg", "E_model_deg", "delta_deg");
    for (const ComparisonRow& r : rows)
        std::printf("%-6s %-9s %8.2f %12.2f %13.2f %10.2f\n",
                    std::string(to_string(r.metric)).c_str(),
                    std::string(to_string(r.condition)).c_str(), r.frequency_ghz,
                    round_half_up_2dp(r.expectation_measured_deg),
                    round_half_up_2dp(r.expectation_tgpp_deg),
                    round_half_up_2dp(r.delta_deg));
}

void require_input(const RunConfig& config) {
    if (config.input.empty())
        fail(config.command + ": --input is required");
    if (!std::filesystem::exists(config.input))
        fail(config.command + ": input file '" + config.input.string() + "' does not exist");
}

void write_cdf_files(const RunConfig& config, std::span<const PerLinkAsRow> per_link) {
    for (const Metric metric : kMetrics) {
        std::vector<double> values;
        for (const PerLinkAsRow& row : per_link)
            if (row.value.metric == metric && row.value.scope == Scope::omni)
                values.push_back(row.value.value_deg);
        if (values.empty())
            continue;
        const auto cdf = empirical_cdf(values);
        write_text_file(config.output_dir / ("cdf_" + lower(to_string(metric)) + ".csv"),
                        cdf_to_csv(cdf));
    }
}

// Projects generated lobes onto the canonical dwell-record format so the CLI
// pipeline can ingest an ensemble like measured data. Per plane the member
// grid is emitted as measured dwells (plane powers rescaled to unit peak —
// spread is scale-invariant), the opposite end parks on the other plane's
// peak direction (its dwells collapse onto an equal-power bin there instead
// of polluting a quiet one), and each uncovered gap of every cut gets one
// below-noise dwell so PAS interpolation cannot bridge genuinely silent
// sectors. The projection quantizes member azimuths to the 1° grid; the lobe
// JSON emitted alongside is the lossless form.
void append_plane_records(std::vector<DirectionalRecord>& out, const LinkLobes& link,
                          Plane plane, const std::vector<SpatialLobe>& lobes, double scale,
                          const Direction& other_end) {
    constexpr std::size_t kBins = 360;
    std::map<double, std::array<bool, kBins>> covered; // zenith -> member bins
    for (const SpatialLobe& lobe : lobes) {
        auto& bins = covered.try_emplace(lobe.zenith_deg).first->second;
        for (const auto& [az, power] : lobe.members) {
            bins[pas_bin_index(az, 1.0, kBins)] = true;
            const double tx_az = plane == Plane::aod ? az : other_end.azimuth_deg;
            const double tx_el = plane == Plane::aod ? lobe.zenith_deg : other_end.zenith_deg;
            const double rx_az = plane == Plane::aoa ? az : other_end.azimuth_deg;
            const double rx_el = plane == Plane::aoa ? lobe.zenith_deg : other_end.zenith_deg;
            out.push_back(DirectionalRecord::make(link.link_id, link.frequency_ghz,
                                                  link.condition, tx_az, tx_el, rx_az, rx_el,
                                                  linear_to_db(power * scale), 0.0, 0.0));
        }
    }
    for (const auto& [zenith, bins] : covered) {
        for (std::size_t b = 0; b < kBins; ++b) {
            if (bins[b] || !bins[(b + kBins - 1) % kBins])
                continue; // only the first bin of each circular gap
            const double az = static_cast<double>(b);
            const double tx_az = plane == Plane::aod ? az : other_end.azimuth_deg;
            const double tx_el = plane == Plane::aod ? zenith : other_end.zenith_deg;
            const double rx_az = plane == Plane::aoa ? az : other_end.azimuth_deg;
            const double rx_el = plane == Plane::aoa ? zenith : other_end.zenith_deg;
            out.push_back(DirectionalRecord::make(link.link_id, link.frequency_ghz,
                                                  link.condition, tx_az, tx_el, rx_az, rx_el,
                                                  std::nullopt, 0.0, 0.0));
        }
    }
}

std::vector<DirectionalRecord> ensemble_to_records(std::span<const LinkLobes> links) {
    const auto plane_peak = [](const std::vector<SpatialLobe>& lobes) {
        double best = 0.0;
        Direction anchor = Direction::make(0.0, 90.0);
        for (const SpatialLobe& lobe : lobes)
            for (const auto& [az, power] : lobe.members)
                if (power > best) {
                    best = power;
                    anchor = Direction::make(az, lobe.zenith_deg);
                }
        return std::make_pair(best, anchor);
    };
    std::vector<DirectionalRecord> out;
    for (const LinkLobes& link : links) {
        if (link.aoa_lobes.empty() || link.aod_lobes.empty())
            fail("ensemble link " + link.link_id + ": missing a plane");
        const auto [aoa_peak, rx_anchor] = plane_peak(link.aoa_lobes);
        const auto [aod_peak, tx_anchor] = plane_peak(link.aod_lobes);
        append_plane_records(out, link, Plane::aoa, link.aoa_lobes, 1.0 / aoa_peak, tx_anchor);
        append_plane_records(out, link, Plane::aod, link.aod_lobes, 1.0 / aod_peak, rx_anchor);
    }
    return out;
}

} // namespace

RunConfig make_run_config(std::string command,
                          const std::optional<std::filesystem::path>& config_file,
                          const CliOverrides& cli) {
    static const std::set<std::string, std::less<>> kCommands{"stats", "compare3gpp",
                                                              "simulate", "ensemble", "cdf"};
    if (!kCommands.contains(command))
        fail("unknown command '" + command +
             "' (expected stats|compare3gpp|simulate|ensemble|cdf)");
    RunConfig cfg;
    cfg.command = std::move(command);
    if (config_file)
        apply_config_file(cfg, *config_file);
    if (cli.input)
        cfg.input = *cli.input;
    if (cli.output_dir)
        cfg.output_dir = *cli.output_dir;
    if (cli.frequency_ghz)
        cfg.frequency_ghz = *cli.frequency_ghz;
    if (cli.threshold_db)
        cfg.threshold_db = *cli.threshold_db;
    if (cli.resolution_deg)
        cfg.resolution_deg = *cli.resolution_deg;
    if (cli.seed)
        cfg.seed = *cli.seed;
    if (cli.format)
        cfg.format = *cli.format;

    if (cfg.format != "csv" && cfg.format != "json")
        fail("format must be 'csv' or 'json', got '" + cfg.format + "'");
    if (!(std::isfinite(cfg.threshold_db) && cfg.threshold_db > 0))
        fail("threshold-db must be finite and > 0");
    if (!(std::isfinite(cfg.resolution_deg) && cfg.resolution_deg > 0))
        fail("resolution-deg must be finite and > 0");
    if (cfg.frequency_ghz && !(std::isfinite(*cfg.frequency_ghz) && *cfg.frequency_ghz > 0))
        fail("frequency must be finite and > 0");
    if (cfg.ensemble) {
        // One seed knob for the whole run; --frequency overrides the section.
        cfg.ensemble->seed = cfg.seed;
        if (cfg.frequency_ghz)
            cfg.ensemble->frequency_ghz = *cfg.frequency_ghz;
    }
    return cfg;
}

StatsOutput compute_stats_from_records(std::span<const DirectionalRecord> records,
                                       double threshold_db, double resolution_deg,
                                       bool keep_spectra) {
    if (records.empty())
        fail("no records to analyze (empty link set)");
    std::map<std::string, std::vector<DirectionalRecord>> by_link;
    for (const DirectionalRecord& r : records)
        by_link[r.link_id].push_back(r);

    StatsOutput out;
    std::vector<LinkLobes> links;
    for (const auto& [link_id, link_records] : by_link) {
        try {
            for (const DirectionalRecord& r : link_records) {
                if (r.frequency_ghz != link_records.front().frequency_ghz)
                    throw std::invalid_argument("mixed frequencies within one link");
                if (r.condition != link_records.front().condition)
                    throw std::invalid_argument("mixed LOS/NLOS conditions within one link");
            }
            LinkLobes link;
            link.link_id = link_id;
            link.frequency_ghz = link_records.front().frequency_ghz;
            link.condition = link_records.front().condition;
            for (const Plane plane : {Plane::aoa, Plane::aod}) {
                const auto reduced =
                    reduce_duplicate_pointings(link_records, plane, resolution_deg);
                PowerAngularSpectrum pas = synthesize_pas(reduced, plane, resolution_deg);
                const double slt = spatial_lobe_threshold(pas, threshold_db);
                auto lobes = segment_lobes(pas, slt);
                (plane == Plane::aoa ? link.aoa_lobes : link.aod_lobes) = std::move(lobes);
                if (keep_spectra)
                    out.spectra.push_back(std::move(pas));
            }
            links.push_back(std::move(link));
        } catch (const std::exception& e) {
            fail("link " + link_id + ": " + e.what());
        }
    }
    finish_stats(std::move(links), out);
    return out;
}

StatsOutput compute_stats_from_lobes(std::span<const LinkLobes> links) {
    if (links.empty())
        fail("no links to analyze (empty link set)");
    StatsOutput out;
    finish_stats({links.begin(), links.end()}, out);
    return out;
}

std::vector<ComparisonRow> compare_summaries(std::span<const LogNormalSummary> rows) {
    std::vector<ComparisonRow> out;
    for (const LogNormalSummary& row : rows) {
        if (row.scope != Scope::omni || row.n_samples == 0)
            continue;
        ComparisonRow c;
        c.metric = row.metric;
        c.condition = row.condition;
        c.frequency_ghz = row.frequency_ghz;
        c.expectation_measured_deg = row.expectation_deg;
        c.expectation_tgpp_deg =
            tgpp_expectation_deg(row.frequency_ghz, row.metric, row.condition);
        c.delta_deg = std::abs(c.expectation_measured_deg - c.expectation_tgpp_deg);
        out.push_back(c);
    }
    if (out.empty())
        fail("no omni summary rows with samples to compare");
    return out;
}

std::string comparisons_to_csv(std::span<const ComparisonRow> rows) {
    std::string out =
        "metric,condition,frequency_ghz,expectation_measured_deg,expectation_tgpp_deg,"
        "delta_deg\n";
    for (const ComparisonRow& r : rows) {
        out += to_string(r.metric);
        out += ',';
        out += to_string(r.condition);
        out += ',';
        out += format_double(r.frequency_ghz);
        out += ',';
        out += format_double(r.expectation_measured_deg);
        out += ',';
        out += format_double(r.expectation_tgpp_deg);
        out += ',';
        out += format_double(r.delta_deg);
        out += '\n';
    }
    return out;
}

std::string comparisons_to_json_text(std::span<const ComparisonRow> rows) {
    json arr = json::array();
    for (const ComparisonRow& r : rows)
        arr.push_back(json{{"metric", std::string(to_string(r.metric))},
                           {"condition", std::string(to_string(r.condition))},
                           {"frequency_ghz", r.frequency_ghz},
                           {"expectation_measured_deg", r.expectation_measured_deg},
                           {"expectation_tgpp_deg", r.expectation_tgpp_deg},
                           {"delta_deg", r.delta_deg}});
    return arr.dump(2) + "\n";
}

void cmd_stats(const RunConfig& config) {
    require_input(config);
    StatsOutput out;
    std::vector<std::string> ingest_warnings;
    if (config.input.extension() == ".json") {
        const auto links = read_lobes_json(config.input);
        out = compute_stats_from_lobes(links);
    } else {
        IngestResult in = read_records_csv(config.input);
        ingest_warnings = std::move(in.warnings);
        out = compute_stats_from_records(in.records, config.threshold_db,
                                         config.resolution_deg, config.emit_pas);
    }
    print_warnings(ingest_warnings);
    print_warnings(out.warnings);

    const bool as_json = config.format == "json";
    write_text_file(config.output_dir / (as_json ? "summary.json" : "summary.csv"),
                    as_json ? summaries_to_json_text(out.summary)
                            : summaries_to_csv(out.summary));
    write_text_file(config.output_dir / (as_json ? "per_link.json" : "per_link.csv"),
                    as_json ? per_link_rows_to_json_text(out.per_link)
                            : per_link_rows_to_csv(out.per_link));
    write_cdf_files(config, out.per_link);
    if (config.emit_lobes)
        write_text_file(config.output_dir / "lobes.json", lobes_to_json_text(out.lobes));
    if (config.emit_pas)
        for (const PowerAngularSpectrum& pas : out.spectra)
            write_text_file(config.output_dir / ("pas_" + sanitize_id(pas.link_id) + "_" +
                                                 lower(to_string(pas.plane)) + ".json"),
                            pas_to_json_text(pas));
    print_summary_table(out.summary);
}

void cmd_compare3gpp(const RunConfig& config) {
    require_input(config);
    std::vector<LogNormalSummary> rows = read_summary_csv(config.input);
    if (config.frequency_ghz) {
        std::erase_if(rows, [&](const LogNormalSummary& r) {
            return r.frequency_ghz != *config.frequency_ghz;
        });
        if (rows.empty())
            fail("compare3gpp: no summary rows at --frequency " +
                 format_double(*config.frequency_ghz));
    }
    const auto comparisons = compare_summaries(rows);
    const bool as_json = config.format == "json";
    write_text_file(config.output_dir / (as_json ? "comparison.json" : "comparison.csv"),
                    as_json ? comparisons_to_json_text(comparisons)
                            : comparisons_to_csv(comparisons));
    print_comparison_table(comparisons);
}

void cmd_simulate(const RunConfig& config) {
    require_input(config);
    if (!config.tx_antenna || !config.rx_antenna)
        fail("simulate: the config file must provide tx_antenna and rx_antenna sections");
    const SyntheticEnvironment env = read_environment_json(config.input);
    const ProcedureResult result =
        run_procedure(env, config.sweep, *config.tx_antenna, *config.rx_antenna);
    write_text_file(config.output_dir / "records.csv", records_to_csv(result.sweep_records()));
    write_text_file(config.output_dir / "search_records.csv",
                    records_to_csv(result.search_records()));
    std::printf("simulate: %zu search dwells, %zu sweep records, %zu significant AOD(s), "
                "RX step %.2f deg\n",
                result.n_search_records, result.sweep_records().size(),
                result.selected_aod_deg.size(), result.rx_step_effective_deg);
}

void cmd_ensemble(const RunConfig& config) {
    if (!config.ensemble)
        fail("ensemble: the config file must provide an 'ensemble' section");
    const EnsembleDataset dataset = generate_ensemble(*config.ensemble);
    write_text_file(config.output_dir / "ensemble_lobes.json",
                    lobes_to_json_text(dataset.links));
    const auto records = ensemble_to_records(dataset.links);
    write_text_file(config.output_dir / "ensemble_records.csv", records_to_csv(records));
    std::printf("ensemble: %zu link(s), %zu dwell record(s), seed %llu\n",
                dataset.links.size(), records.size(),
                static_cast<unsigned long long>(dataset.spec.seed));
}

void cmd_cdf(const RunConfig& config) {
    require_input(config);
    const auto rows = read_per_link_csv(config.input);
    bool any = false;
    for (const PerLinkAsRow& row : rows)
        any = any || row.value.scope == Scope::omni;
    if (!any)
        fail("cdf: no omni-scope samples in input");
    write_cdf_files(config, rows);
    std::printf("cdf: wrote per-metric CDF files to %s\n",
                config.output_dir.string().c_str());
}

void run_command(const RunConfig& config) {
    if (config.command == "stats")
        cmd_stats(config);
    else if (config.command == "compare3gpp")
        cmd_compare3gpp(config);
    else if (config.command == "simulate")
        cmd_simulate(config);
    else if (config.command == "ensemble")
        cmd_ensemble(config);
    else if (config.command == "cdf")
        cmd_cdf(config);
    else
        fail("unknown command '" + config.command + "'");
}

} // namespace aspread
