// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#include "aspread/tgpp.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "aspread/tgpp_embedded_data.hpp"

namespace aspread {

namespace {

constexpr std::string_view kHeader = "metric,condition,mu_a,mu_b,sigma_a,sigma_b,provenance";

std::size_t row_slot(Metric m, Condition c) {
    return static_cast<std::size_t>(m) * 2 + static_cast<std::size_t>(c);
}

double parse_strict_double(std::string_view field, std::string_view what) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw std::invalid_argument("TgppParamTable: bad " + std::string(what) + " value '" +
                                    std::string(field) + "'");
    return v;
}

// Splits off the first `n` comma fields; the remainder (which may itself
// contain commas) is appended as the final field.
std::vector<std::string_view> split_fields(std::string_view line, std::size_t n) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos)
            throw std::invalid_argument("TgppParamTable: row has too few columns: '" +
                                        std::string(line) + "'");
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    out.push_back(line.substr(pos));
    return out;
}

} // namespace

double round_half_up_2dp(double v) { return std::floor(v * 100.0 + 0.5) / 100.0; }

TgppParamTable TgppParamTable::from_csv_text(std::string_view text) {
    TgppParamTable table;
    std::array<bool, 8> seen{};
    bool header_seen = false;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty())
            continue;
        if (line.front() == '#') {
            const std::size_t tag = line.find("format_version:");
            if (tag != std::string_view::npos) {
                std::string_view v = line.substr(tag + 15);
                while (!v.empty() && v.front() == ' ')
                    v.remove_prefix(1);
                int fv = 0;
                const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), fv);
                if (ec != std::errc{} || fv < 1)
                    throw std::invalid_argument("TgppParamTable: bad format_version comment");
                (void)ptr;
                table.format_version_ = fv;
            }
            continue;
        }
        if (!header_seen) {
            if (line != kHeader)
                throw std::invalid_argument("TgppParamTable: unexpected header '" +
                                            std::string(line) + "'");
            header_seen = true;
            continue;
        }
        const auto f = split_fields(line, 6);
        const Metric m = metric_from_string(f[0]);
        const Condition c = condition_from_string(f[1]);
        const std::size_t slot = row_slot(m, c);
        if (seen[slot])
            throw std::invalid_argument("TgppParamTable: duplicate row for " +
                                        std::string(to_string(m)) + "/" +
                                        std::string(to_string(c)));
        seen[slot] = true;
        Row& row = table.rows_[slot];
        row.mu_a = parse_strict_double(f[2], "mu_a");
        row.mu_b = parse_strict_double(f[3], "mu_b");
        row.sigma_a = parse_strict_double(f[4], "sigma_a");
        row.sigma_b = parse_strict_double(f[5], "sigma_b");
        row.provenance = std::string(f[6]);
    }

    if (!header_seen)
        throw std::invalid_argument("TgppParamTable: missing header row");
    if (table.format_version_ == 0)
        throw std::invalid_argument("TgppParamTable: missing '# format_version:' comment");
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw std::invalid_argument("TgppParamTable: incomplete table (8 rows required)");
    return table;
}

TgppParamTable TgppParamTable::from_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("TgppParamTable: cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_csv_text(buf.str());
}

const TgppParamTable& TgppParamTable::embedded() {
    static const TgppParamTable table = from_csv_text(detail::kTgppInhCsv);
    return table;
}

const TgppParamTable::Row& TgppParamTable::row(Metric m, Condition c) const {
    return rows_[row_slot(m, c)];
}

std::pair<double, double> tgpp_as_params(double fc_ghz, Metric metric, Condition condition,
                                         const TgppParamTable& table) {
    if (!std::isfinite(fc_ghz) || fc_ghz < 0.5 || fc_ghz > 100.0)
        throw std::invalid_argument(
            "tgpp_as_params: carrier frequency must be within [0.5, 100] GHz");
    const double x = std::log10(1.0 + fc_ghz);
    const TgppParamTable::Row& r = table.row(metric, condition);
    return {r.mu_a * x + r.mu_b, r.sigma_a * x + r.sigma_b};
}

double tgpp_expectation_deg(double fc_ghz, Metric metric, Condition condition,
                            bool round_to_table_precision, const TgppParamTable& table) {
    auto [mu, sigma] = tgpp_as_params(fc_ghz, metric, condition, table);
    if (round_to_table_precision) {
        mu = round_half_up_2dp(mu);
        sigma = round_half_up_2dp(sigma);
    }
    return lognormal_expectation_deg(mu, sigma);
}

double compare_measured_vs_tgpp(const LogNormalSummary& measured, double fc_ghz,
                                const TgppParamTable& table) {
    if (measured.scope != Scope::omni)
        throw std::invalid_argument("compare_measured_vs_tgpp: omni-scope summary required");
    if (measured.frequency_ghz != fc_ghz)
        throw std::invalid_argument(
            "compare_measured_vs_tgpp: summary frequency does not match fc_ghz");
    const double model =
        tgpp_expectation_deg(fc_ghz, measured.metric, measured.condition, true, table);
    return std::abs(measured.expectation_deg - model);
}

} // namespace aspread
