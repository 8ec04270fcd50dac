// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#include "aspread/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

#include "aspread/angles.hpp"

namespace aspread {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::string loc(std::string_view source, std::size_t row) {
    return std::string(source) + ":" + std::to_string(row);
}

// Iterates physical lines (LF or CRLF), calling fn(line, 1-based row).
template <typename Fn> void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t pos = 0, row = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        ++row;
        if (line.empty() && pos > text.size())
            break; // ignore the pseudo-line after a trailing newline
        fn(line, row);
    }
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

double parse_double_field(std::string_view field, std::string_view source, std::size_t row,
                          std::string_view col) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v))
        fail(loc(source, row) + ": column " + std::string(col) + ": expected a finite number, got '" +
             std::string(field) + "'");
    return v;
}

long long parse_int_field(std::string_view field, std::string_view source, std::size_t row,
                          std::string_view col) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        fail(loc(source, row) + ": column " + std::string(col) + ": expected an integer, got '" +
             std::string(field) + "'");
    return v;
}

// Compares a header line against the schema and reports the first deviating
// column by name.
void check_header(std::string_view line, std::string_view expected, std::string_view source,
                  std::size_t row) {
    if (line == expected)
        return;
    const auto got = split_csv(line);
    const auto want = split_csv(expected);
    for (std::size_t i = 0; i < want.size(); ++i) {
        if (i >= got.size())
            fail(loc(source, row) + ": missing column '" + std::string(want[i]) + "' in header");
        if (got[i] != want[i])
            fail(loc(source, row) + ": header column " + std::to_string(i + 1) + ": expected '" +
                 std::string(want[i]) + "', got '" + std::string(got[i]) + "'");
    }
    fail(loc(source, row) + ": header has " + std::to_string(got.size()) +
         " columns, expected " + std::to_string(want.size()));
}

void check_field_id(std::string_view id, std::string_view what) {
    if (id.empty())
        throw std::invalid_argument(std::string(what) + " must be non-empty");
    if (id.find_first_of(",\r\n") != std::string_view::npos)
        throw std::invalid_argument(std::string(what) + " must not contain commas or newlines");
}

// Wraps an azimuth field, recording a warning when it was out of range.
double ingest_azimuth(double value, std::string_view source, std::size_t row,
                      std::string_view col, std::vector<std::string>& warnings) {
    if (value >= 0.0 && value < 360.0)
        return value;
    const double wrapped = wrap_azimuth(value);
    warnings.push_back(loc(source, row) + ": column " + std::string(col) + ": azimuth " +
                       format_double(value) + " wrapped to " + format_double(wrapped));
    return wrapped;
}

json parse_json(std::string_view text, std::string_view source) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string(source) + ": invalid JSON: " + e.what());
    }
}

// Rejects unknown keys — silent typos corrupt science runs.
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

std::string json_string(const json& obj, std::string_view what, std::string_view key) {
    const json& v = obj.at(std::string(key));
    if (!v.is_string())
        fail(std::string(what) + ": key '" + std::string(key) + "' must be a string");
    return v.get<std::string>();
}

json lobe_to_json(const SpatialLobe& lobe) {
    json members = json::array();
    for (const auto& [deg, mw] : lobe.members)
        members.push_back(json::array({deg, mw}));
    return json{{"lobe_index", lobe.lobe_index},
                {"start_deg", lobe.start_deg},
                {"end_deg", lobe.end_deg},
                {"peak_power_mw", lobe.peak_power_mw},
                {"members", std::move(members)}};
}

SpatialLobe lobe_from_json(const json& j, double zenith_deg, std::string_view source) {
    check_keys(j, std::string(source) + ": lobe",
               {"lobe_index", "start_deg", "end_deg", "peak_power_mw", "members"}, {});
    SpatialLobe lobe;
    lobe.lobe_index = static_cast<int>(json_number(j, source, "lobe_index"));
    lobe.start_deg = json_number(j, source, "start_deg");
    lobe.end_deg = json_number(j, source, "end_deg");
    lobe.peak_power_mw = json_number(j, source, "peak_power_mw");
    lobe.zenith_deg = zenith_deg;
    const json& members = j.at("members");
    if (!members.is_array() || members.empty())
        fail(std::string(source) + ": lobe members must be a non-empty array");
    for (const json& m : members) {
        if (!m.is_array() || m.size() != 2 || !m[0].is_number() || !m[1].is_number())
            fail(std::string(source) + ": lobe member must be a [deg, mw] pair");
        lobe.members.emplace_back(m[0].get<double>(), m[1].get<double>());
    }
    return lobe;
}

// Buckets one plane's lobes by elevation cut (ascending zenith) for the JSON
// envelope, keeping lobe_index order inside each cut.
json plane_to_json(std::string_view plane_name, const std::vector<SpatialLobe>& lobes) {
    std::map<double, json> cuts;
    for (const SpatialLobe& lobe : lobes) {
        auto [it, inserted] = cuts.try_emplace(lobe.zenith_deg);
        if (inserted)
            it->second = json{{"zenith_deg", lobe.zenith_deg}, {"lobes", json::array()}};
        it->second["lobes"].push_back(lobe_to_json(lobe));
    }
    json cut_array = json::array();
    for (auto& [zenith, cut] : cuts)
        cut_array.push_back(std::move(cut));
    return json{{"plane", std::string(plane_name)}, {"cuts", std::move(cut_array)}};
}

constexpr std::string_view kSummaryHeader =
    "metric,scope,condition,frequency_ghz,mu_lg,sigma_lg,expectation_deg,n_samples";
constexpr std::string_view kPerLinkHeader =
    "link_id,frequency_ghz,condition,metric,scope,lobe_index,as_deg";

} // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{})
        throw std::invalid_argument("format_double: value not representable");
    return std::string(buf, ptr);
}

IngestResult parse_records_csv(std::string_view text, std::string_view source_name) {
    IngestResult result;
    bool saw_header = false;
    for_each_line(text, [&](std::string_view line, std::size_t row) {
        if (line.empty())
            return;
        if (!saw_header) {
            check_header(line, kRecordsCsvHeader, source_name, row);
            saw_header = true;
            return;
        }
        const auto f = split_csv(line);
        if (f.size() != 10)
            fail(loc(source_name, row) + ": expected 10 fields, got " +
                 std::to_string(f.size()));
        if (f[0].empty())
            fail(loc(source_name, row) + ": column link_id: must be non-empty");
        const double freq = parse_double_field(f[1], source_name, row, "frequency_ghz");
        Condition cond = Condition::los;
        try {
            cond = condition_from_string(f[2]);
        } catch (const std::invalid_argument& e) {
            fail(loc(source_name, row) + ": column condition: " + e.what());
        }
        const double tx_az = ingest_azimuth(
            parse_double_field(f[3], source_name, row, "tx_az_deg"), source_name, row,
            "tx_az_deg", result.warnings);
        const double tx_el = parse_double_field(f[4], source_name, row, "tx_el_deg");
        const double rx_az = ingest_azimuth(
            parse_double_field(f[5], source_name, row, "rx_az_deg"), source_name, row,
            "rx_az_deg", result.warnings);
        const double rx_el = parse_double_field(f[6], source_name, row, "rx_el_deg");
        std::optional<double> power;
        if (!f[7].empty())
            power = parse_double_field(f[7], source_name, row, "power_dbm");
        const double tx_gain = parse_double_field(f[8], source_name, row, "tx_gain_dbi");
        const double rx_gain = parse_double_field(f[9], source_name, row, "rx_gain_dbi");
        try {
            result.records.push_back(DirectionalRecord::make(std::string(f[0]), freq, cond,
                                                             tx_az, tx_el, rx_az, rx_el, power,
                                                             tx_gain, rx_gain));
        } catch (const std::invalid_argument& e) {
            fail(loc(source_name, row) + ": " + e.what());
        }
    });
    if (!saw_header)
        fail(std::string(source_name) + ": empty file");
    return result;
}

IngestResult read_records_csv(const std::filesystem::path& path) {
    return parse_records_csv(read_text_file(path), path.string());
}

std::string records_to_csv(std::span<const DirectionalRecord> records) {
    std::string out{kRecordsCsvHeader};
    out += '\n';
    for (const DirectionalRecord& r : records) {
        check_field_id(r.link_id, "records_to_csv: link_id");
        out += r.link_id;
        out += ',';
        out += format_double(r.frequency_ghz);
        out += ',';
        out += to_string(r.condition);
        out += ',';
        out += format_double(r.tx_az_deg);
        out += ',';
        out += format_double(r.tx_el_deg);
        out += ',';
        out += format_double(r.rx_az_deg);
        out += ',';
        out += format_double(r.rx_el_deg);
        out += ',';
        if (r.power_dbm)
            out += format_double(*r.power_dbm);
        out += ',';
        out += format_double(r.tx_gain_dbi);
        out += ',';
        out += format_double(r.rx_gain_dbi);
        out += '\n';
    }
    return out;
}

void write_records_csv(const std::filesystem::path& path,
                       std::span<const DirectionalRecord> records) {
    write_text_file(path, records_to_csv(records));
}

std::string pas_to_json_text(const PowerAngularSpectrum& pas) {
    json cuts = json::array();
    for (const ElevationCut& cut : pas.cuts) {
        json bins = json::array(), measured = json::array(), below = json::array();
        for (std::size_t i = 0; i < cut.power_mw.size(); ++i) {
            const BinState s = cut.state[i];
            if (s == BinState::measured || s == BinState::interpolated)
                bins.push_back(cut.power_mw[i]);
            else
                bins.push_back(nullptr);
            measured.push_back(s == BinState::measured);
            below.push_back(s == BinState::below_noise);
        }
        cuts.push_back(json{{"zenith_deg", cut.zenith_deg},
                            {"bins", std::move(bins)},
                            {"measured", std::move(measured)},
                            {"below_noise", std::move(below)}});
    }
    const json j{{"link_id", pas.link_id},
                 {"plane", std::string(to_string(pas.plane))},
                 {"resolution_deg", pas.resolution_deg},
                 {"cuts", std::move(cuts)}};
    return j.dump(2) + "\n";
}

PowerAngularSpectrum pas_from_json_text(std::string_view text) {
    const json j = parse_json(text, "pas");
    check_keys(j, "pas", {"link_id", "plane", "resolution_deg", "cuts"}, {});
    PowerAngularSpectrum pas;
    pas.link_id = json_string(j, "pas", "link_id");
    pas.plane = json_string(j, "pas", "plane") == "AOD" ? Plane::aod : Plane::aoa;
    pas.resolution_deg = json_number(j, "pas", "resolution_deg");
    if (!j.at("cuts").is_array())
        fail("pas: 'cuts' must be an array");
    for (const json& c : j.at("cuts")) {
        check_keys(c, "pas cut", {"zenith_deg", "bins", "measured", "below_noise"}, {});
        ElevationCut cut;
        cut.zenith_deg = json_number(c, "pas cut", "zenith_deg");
        const json& bins = c.at("bins");
        const json& measured = c.at("measured");
        const json& below = c.at("below_noise");
        if (!bins.is_array() || !measured.is_array() || !below.is_array() ||
            bins.size() != measured.size() || bins.size() != below.size())
            fail("pas cut: bins/measured/below_noise must be arrays of equal length");
        for (std::size_t i = 0; i < bins.size(); ++i) {
            if (bins[i].is_null()) {
                cut.power_mw.push_back(0.0);
                cut.state.push_back(below[i].get<bool>() ? BinState::below_noise
                                                         : BinState::absent);
            } else {
                cut.power_mw.push_back(bins[i].get<double>());
                cut.state.push_back(measured[i].get<bool>() ? BinState::measured
                                                            : BinState::interpolated);
            }
        }
        pas.cuts.push_back(std::move(cut));
    }
    return pas;
}

std::string lobes_to_json_text(std::span<const LinkLobes> links) {
    json link_array = json::array();
    for (const LinkLobes& link : links) {
        json planes = json::array();
        planes.push_back(plane_to_json("AOA", link.aoa_lobes));
        planes.push_back(plane_to_json("AOD", link.aod_lobes));
        json entry{{"link_id", link.link_id},
                   {"frequency_ghz", link.frequency_ghz},
                   {"condition", std::string(to_string(link.condition))},
                   {"planes", std::move(planes)}};
        if (link.target_as_deg) {
            const auto& t = *link.target_as_deg;
            entry["targets"] = json{{"asa_deg", t[0]},
                                    {"asd_deg", t[1]},
                                    {"zsa_deg", t[2]},
                                    {"zsd_deg", t[3]}};
        }
        link_array.push_back(std::move(entry));
    }
    const json j{{"format", "aspread-lobes"}, {"version", 1}, {"links", std::move(link_array)}};
    return j.dump(2) + "\n";
}

std::vector<LinkLobes> lobes_from_json_text(std::string_view text) {
    const json j = parse_json(text, "lobes");
    check_keys(j, "lobes", {"format", "version", "links"}, {});
    if (json_string(j, "lobes", "format") != "aspread-lobes")
        fail("lobes: unrecognized format '" + json_string(j, "lobes", "format") + "'");
    if (!j.at("version").is_number_integer() || j.at("version").get<int>() != 1)
        fail("lobes: unsupported version");
    if (!j.at("links").is_array())
        fail("lobes: 'links' must be an array");

    std::vector<LinkLobes> out;
    for (const json& entry : j.at("links")) {
        check_keys(entry, "lobes link", {"link_id", "frequency_ghz", "condition", "planes"},
                   {"targets"});
        LinkLobes link;
        link.link_id = json_string(entry, "lobes link", "link_id");
        link.frequency_ghz = json_number(entry, "lobes link", "frequency_ghz");
        link.condition = condition_from_string(json_string(entry, "lobes link", "condition"));
        if (entry.contains("targets")) {
            const json& t = entry.at("targets");
            check_keys(t, "lobes targets", {"asa_deg", "asd_deg", "zsa_deg", "zsd_deg"}, {});
            link.target_as_deg = {
                json_number(t, "lobes targets", "asa_deg"),
                json_number(t, "lobes targets", "asd_deg"),
                json_number(t, "lobes targets", "zsa_deg"),
                json_number(t, "lobes targets", "zsd_deg"),
            };
        }
        if (!entry.at("planes").is_array())
            fail("lobes link: 'planes' must be an array");
        for (const json& plane : entry.at("planes")) {
            check_keys(plane, "lobes plane", {"plane", "cuts"}, {});
            const std::string plane_name = json_string(plane, "lobes plane", "plane");
            if (plane_name != "AOA" && plane_name != "AOD")
                fail("lobes plane: plane must be AOA or AOD");
            std::vector<SpatialLobe>& dst =
                plane_name == "AOA" ? link.aoa_lobes : link.aod_lobes;
            if (!plane.at("cuts").is_array())
                fail("lobes plane: 'cuts' must be an array");
            for (const json& cut : plane.at("cuts")) {
                check_keys(cut, "lobes cut", {"zenith_deg", "lobes"}, {});
                const double zenith = json_number(cut, "lobes cut", "zenith_deg");
                if (!cut.at("lobes").is_array())
                    fail("lobes cut: 'lobes' must be an array");
                for (const json& lobe : cut.at("lobes"))
                    dst.push_back(lobe_from_json(lobe, zenith, "lobes"));
            }
            std::sort(dst.begin(), dst.end(),
                      [](const SpatialLobe& a, const SpatialLobe& b) {
                          return a.lobe_index < b.lobe_index;
                      });
        }
        out.push_back(std::move(link));
    }
    return out;
}

std::vector<LinkLobes> read_lobes_json(const std::filesystem::path& path) {
    try {
        return lobes_from_json_text(read_text_file(path));
    } catch (const std::runtime_error& e) {
        fail(path.string() + ": " + e.what());
    }
}

SyntheticEnvironment environment_from_json_text(std::string_view text) {
    const json j = parse_json(text, "environment");
    check_keys(j, "environment", {"frequency_ghz", "condition", "subpaths"},
               {"link_id", "noise_floor_dbm"});
    SyntheticEnvironment env;
    if (j.contains("link_id"))
        env.link_id = json_string(j, "environment", "link_id");
    env.frequency_ghz = json_number(j, "environment", "frequency_ghz");
    env.condition = condition_from_string(json_string(j, "environment", "condition"));
    if (j.contains("noise_floor_dbm"))
        env.noise_floor_dbm = json_number(j, "environment", "noise_floor_dbm");
    if (!j.at("subpaths").is_array())
        fail("environment: 'subpaths' must be an array");
    for (const json& sp : j.at("subpaths")) {
        check_keys(sp, "environment subpath",
                   {"power_mw", "aod_deg", "zod_deg", "aoa_deg", "zoa_deg"}, {"delay_ns"});
        const double delay =
            sp.contains("delay_ns") ? json_number(sp, "subpath", "delay_ns") : 0.0;
        try {
            env.truth_subpaths.push_back(Subpath::make_from_power(
                json_number(sp, "subpath", "power_mw"), 0.0, delay,
                Direction::make(json_number(sp, "subpath", "aod_deg"),
                                json_number(sp, "subpath", "zod_deg")),
                Direction::make(json_number(sp, "subpath", "aoa_deg"),
                                json_number(sp, "subpath", "zoa_deg"))));
        } catch (const std::invalid_argument& e) {
            fail(std::string("environment subpath: ") + e.what());
        }
    }
    return env;
}

SyntheticEnvironment read_environment_json(const std::filesystem::path& path) {
    try {
        return environment_from_json_text(read_text_file(path));
    } catch (const std::runtime_error& e) {
        fail(path.string() + ": " + e.what());
    }
}

std::string environment_to_json_text(const SyntheticEnvironment& env) {
    json subpaths = json::array();
    for (const Subpath& sp : env.truth_subpaths)
        subpaths.push_back(json{{"power_mw", sp.power_linear()},
                                {"delay_ns", sp.delay_ns},
                                {"aod_deg", sp.departure.azimuth_deg},
                                {"zod_deg", sp.departure.zenith_deg},
                                {"aoa_deg", sp.arrival.azimuth_deg},
                                {"zoa_deg", sp.arrival.zenith_deg}});
    const json j{{"link_id", env.link_id},
                 {"frequency_ghz", env.frequency_ghz},
                 {"condition", std::string(to_string(env.condition))},
                 {"noise_floor_dbm", env.noise_floor_dbm},
                 {"subpaths", std::move(subpaths)}};
    return j.dump(2) + "\n";
}

std::string summaries_to_csv(std::span<const LogNormalSummary> rows) {
    std::string out{kSummaryHeader};
    out += '\n';
    for (const LogNormalSummary& s : rows) {
        out += to_string(s.metric);
        out += ',';
        out += to_string(s.scope);
        out += ',';
        out += to_string(s.condition);
        out += ',';
        out += format_double(s.frequency_ghz);
        out += ',';
        if (s.n_samples > 0) {
            out += format_double(s.mu_lg);
            out += ',';
            out += format_double(s.sigma_lg);
            out += ',';
            out += format_double(s.expectation_deg);
        } else {
            out += ",,";
        }
        out += ',';
        out += std::to_string(s.n_samples);
        out += '\n';
    }
    return out;
}

std::vector<LogNormalSummary> summaries_from_csv(std::string_view text,
                                                 std::string_view source_name) {
    std::vector<LogNormalSummary> rows;
    bool saw_header = false;
    for_each_line(text, [&](std::string_view line, std::size_t row) {
        if (line.empty())
            return;
        if (!saw_header) {
            check_header(line, kSummaryHeader, source_name, row);
            saw_header = true;
            return;
        }
        const auto f = split_csv(line);
        if (f.size() != 8)
            fail(loc(source_name, row) + ": expected 8 fields, got " + std::to_string(f.size()));
        LogNormalSummary s;
        try {
            s.metric = metric_from_string(f[0]);
            s.scope = scope_from_string(f[1]);
            s.condition = condition_from_string(f[2]);
        } catch (const std::invalid_argument& e) {
            fail(loc(source_name, row) + ": " + e.what());
        }
        s.frequency_ghz = parse_double_field(f[3], source_name, row, "frequency_ghz");
        const long long n = parse_int_field(f[7], source_name, row, "n_samples");
        if (n < 0)
            fail(loc(source_name, row) + ": column n_samples: must be >= 0");
        s.n_samples = static_cast<std::size_t>(n);
        if (s.n_samples > 0) {
            s.mu_lg = parse_double_field(f[4], source_name, row, "mu_lg");
            s.sigma_lg = parse_double_field(f[5], source_name, row, "sigma_lg");
            s.expectation_deg = parse_double_field(f[6], source_name, row, "expectation_deg");
        } else if (!f[4].empty() || !f[5].empty() || !f[6].empty()) {
            fail(loc(source_name, row) + ": numeric fields must be empty when n_samples is 0");
        }
        rows.push_back(std::move(s));
    });
    if (!saw_header)
        fail(std::string(source_name) + ": empty file");
    return rows;
}

std::vector<LogNormalSummary> read_summary_csv(const std::filesystem::path& path) {
    return summaries_from_csv(read_text_file(path), path.string());
}

std::string summaries_to_json_text(std::span<const LogNormalSummary> rows) {
    json arr = json::array();
    for (const LogNormalSummary& s : rows) {
        json row{{"metric", std::string(to_string(s.metric))},
                 {"scope", std::string(to_string(s.scope))},
                 {"condition", std::string(to_string(s.condition))},
                 {"frequency_ghz", s.frequency_ghz},
                 {"n_samples", s.n_samples}};
        if (s.n_samples > 0) {
            row["mu_lg"] = s.mu_lg;
            row["sigma_lg"] = s.sigma_lg;
            row["expectation_deg"] = s.expectation_deg;
        } else {
            row["mu_lg"] = nullptr;
            row["sigma_lg"] = nullptr;
            row["expectation_deg"] = nullptr;
        }
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

std::string per_link_rows_to_csv(std::span<const PerLinkAsRow> rows) {
    std::string out{kPerLinkHeader};
    out += '\n';
    for (const PerLinkAsRow& r : rows) {
        check_field_id(r.value.link_id, "per_link_rows_to_csv: link_id");
        out += r.value.link_id;
        out += ',';
        out += format_double(r.frequency_ghz);
        out += ',';
        out += to_string(r.condition);
        out += ',';
        out += to_string(r.value.metric);
        out += ',';
        out += to_string(r.value.scope);
        out += ',';
        if (r.value.scope == Scope::lobe)
            out += std::to_string(r.value.lobe_index);
        out += ',';
        out += format_double(r.value.value_deg);
        out += '\n';
    }
    return out;
}

std::vector<PerLinkAsRow> per_link_rows_from_csv(std::string_view text,
                                                 std::string_view source_name) {
    std::vector<PerLinkAsRow> rows;
    bool saw_header = false;
    for_each_line(text, [&](std::string_view line, std::size_t row) {
        if (line.empty())
            return;
        if (!saw_header) {
            check_header(line, kPerLinkHeader, source_name, row);
            saw_header = true;
            return;
        }
        const auto f = split_csv(line);
        if (f.size() != 7)
            fail(loc(source_name, row) + ": expected 7 fields, got " + std::to_string(f.size()));
        if (f[0].empty())
            fail(loc(source_name, row) + ": column link_id: must be non-empty");
        PerLinkAsRow r;
        r.value.link_id = std::string(f[0]);
        r.frequency_ghz = parse_double_field(f[1], source_name, row, "frequency_ghz");
        try {
            r.condition = condition_from_string(f[2]);
            r.value.metric = metric_from_string(f[3]);
            r.value.scope = scope_from_string(f[4]);
        } catch (const std::invalid_argument& e) {
            fail(loc(source_name, row) + ": " + e.what());
        }
        if (r.value.scope == Scope::lobe)
            r.value.lobe_index =
                static_cast<int>(parse_int_field(f[5], source_name, row, "lobe_index"));
        else if (!f[5].empty())
            fail(loc(source_name, row) + ": column lobe_index: must be empty for omni scope");
        r.value.value_deg = parse_double_field(f[6], source_name, row, "as_deg");
        rows.push_back(std::move(r));
    });
    if (!saw_header)
        fail(std::string(source_name) + ": empty file");
    return rows;
}

std::vector<PerLinkAsRow> read_per_link_csv(const std::filesystem::path& path) {
    return per_link_rows_from_csv(read_text_file(path), path.string());
}

std::string per_link_rows_to_json_text(std::span<const PerLinkAsRow> rows) {
    json arr = json::array();
    for (const PerLinkAsRow& r : rows) {
        json row{{"link_id", r.value.link_id},
                 {"frequency_ghz", r.frequency_ghz},
                 {"condition", std::string(to_string(r.condition))},
                 {"metric", std::string(to_string(r.value.metric))},
                 {"scope", std::string(to_string(r.value.scope))},
                 {"as_deg", r.value.value_deg}};
        if (r.value.scope == Scope::lobe)
            row["lobe_index"] = r.value.lobe_index;
        else
            row["lobe_index"] = nullptr;
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

std::string cdf_to_csv(std::span<const std::pair<double, double>> points) {
    std::string out = "value_deg,cumulative_probability\n";
    for (const auto& [value, prob] : points) {
        out += format_double(value);
        out += ',';
        out += format_double(prob);
        out += '\n';
    }
    return out;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        fail("error while reading '" + path.string() + "'");
    return std::move(buf).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec)
            fail("cannot create directory '" + path.parent_path().string() + "': " +
                 ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        fail("error while writing '" + path.string() + "'");
}

} // namespace aspread
