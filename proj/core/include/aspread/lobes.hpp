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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aspread/pas.hpp"

namespace aspread {

// A maximal contiguous above-threshold azimuth arc of one elevation cut.
// Members cover every grid bin in the arc (interpolated bins included, with
// their interpolated power); every member power is >= the segmentation
// threshold, and the bins circularly adjacent to start/end are below
// threshold or absent (or the arc covers the full circle).
struct SpatialLobe {
    int lobe_index = 0;         // ordinal in descending-peak order
    double start_deg = 0.0;     // inclusive arc; end < start means it wraps 0
    double end_deg = 0.0;
    double zenith_deg = 90.0;   // elevation cut the lobe lives on
    double peak_power_mw = 0.0;
    std::vector<std::pair<double, double>> members;  // (azimuth_deg, power_mw)
};

// Segmentation threshold: peak present-bin power across all cuts divided by
// 10^(threshold_db/10). threshold_db must be > 0 (default 10). Throws
// std::invalid_argument on an all-absent PAS.
double spatial_lobe_threshold(const PowerAngularSpectrum& pas, double threshold_db = 10.0);

// Segments every elevation cut into maximal contiguous arcs of bins with
// power >= slt_mw (inclusive; absent and below-noise bins terminate arcs
// exactly like below-threshold bins). An arc crossing 0/360 is one lobe; a
// single qualifying bin is a valid lobe; a full-circle arc is one lobe whose
// canonical start is its global peak bin. Lobes are ordered by descending
// peak power (ties: lower azimuth, then lower zenith) and indexed in that
// order. Requires slt_mw > 0. Returns empty if nothing qualifies.
std::vector<SpatialLobe> segment_lobes(const PowerAngularSpectrum& pas, double slt_mw);

// Number of lobes at the given threshold: composition of the two operations.
int count_lobes(const PowerAngularSpectrum& pas, double threshold_db = 10.0);

// All lobes of one link, both planes — the dataset row the statistics
// pipeline consumes and the lobe-JSON interchange format carries. Ensemble
// generation fills target_as_deg (drawn ground truth, indexed by Metric);
// measured data leaves it empty.
struct LinkLobes {
    std::string link_id;
    double frequency_ghz = 0.0;
    Condition condition = Condition::los;
    std::optional<std::array<double, 4>> target_as_deg;
    std::vector<SpatialLobe> aoa_lobes;
    std::vector<SpatialLobe> aod_lobes;
};

} // namespace aspread
