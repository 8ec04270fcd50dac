// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>

#include "aspread/model.hpp"
#include "aspread/stats.hpp"

namespace aspread {

// TR 38.901 InH-Office angular-spread parameter table. Each (metric,
// condition) row evaluates mu_lg/sigma_lg = a * log10(1 + fc_GHz) + b;
// frequency-constant rows carry a zero slope. Valid for fc in [0.5, 100] GHz.
// The default table is embedded from the versioned CSV shipped with the
// library; from_csv() loads an override file through the same parser.
class TgppParamTable {
  public:
    struct Row {
        double mu_a = 0.0, mu_b = 0.0;
        double sigma_a = 0.0, sigma_b = 0.0;
        std::string provenance;
    };

    static const TgppParamTable& embedded();
    static TgppParamTable from_csv_text(std::string_view text);
    static TgppParamTable from_csv_file(const std::filesystem::path& path);

    const Row& row(Metric m, Condition c) const;
    int format_version() const { return format_version_; }

  private:
    std::array<Row, 8> rows_{};
    int format_version_ = 0;
};

// Display-precision rounding used by published parameter tables and the
// human-readable reports: half-up to two decimals (floor(v*100 + 0.5)/100).
double round_half_up_2dp(double v);

// Evaluates (mu_lg, sigma_lg) for the given metric/condition at fc_ghz.
// Values are unrounded. Throws std::invalid_argument outside [0.5, 100] GHz.
std::pair<double, double> tgpp_as_params(double fc_ghz, Metric metric, Condition condition,
                                         const TgppParamTable& table = TgppParamTable::embedded());

// Log-normal expectation of the model parameters, in degrees. By default the
// parameters are first rounded half-up to two decimals — the table-display
// convention the published comparison columns are built on — so comparisons
// against two-decimal published values are consistent; pass
// round_to_table_precision = false for the unrounded composition.
double tgpp_expectation_deg(double fc_ghz, Metric metric, Condition condition,
                            bool round_to_table_precision = true,
                            const TgppParamTable& table = TgppParamTable::embedded());

// |measured expectation - model expectation| in degrees for an omni summary.
// Requires scope == omni, the summary's frequency to match fc_ghz, and fc in
// the validity range; throws std::invalid_argument otherwise.
double compare_measured_vs_tgpp(const LogNormalSummary& measured, double fc_ghz,
                                const TgppParamTable& table = TgppParamTable::embedded());

} // namespace aspread
