// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#include "aspread/lobes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aspread {

namespace {

bool bin_present(const ElevationCut& cut, std::size_t i) {
    return cut.state[i] == BinState::measured || cut.state[i] == BinState::interpolated;
}

SpatialLobe make_lobe(const PowerAngularSpectrum& pas, const ElevationCut& cut,
                      std::size_t start_bin, std::size_t length) {
    const std::size_t n = cut.power_mw.size();
    SpatialLobe lobe;
    lobe.zenith_deg = cut.zenith_deg;
    lobe.members.reserve(length);
    for (std::size_t k = 0; k < length; ++k) {
        const std::size_t i = (start_bin + k) % n;
        lobe.members.emplace_back(pas.bin_angle_deg(i), cut.power_mw[i]);
    }
    lobe.start_deg = lobe.members.front().first;
    lobe.end_deg = lobe.members.back().first;
    lobe.peak_power_mw = 0.0;
    for (const auto& [az, p] : lobe.members)
        lobe.peak_power_mw = std::max(lobe.peak_power_mw, p);
    return lobe;
}

// Lowest member azimuth achieving the lobe's peak power (ordering tiebreak).
double peak_azimuth(const SpatialLobe& lobe) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [az, p] : lobe.members)
        if (p == lobe.peak_power_mw)
            best = std::min(best, az);
    return best;
}

} // namespace

double spatial_lobe_threshold(const PowerAngularSpectrum& pas, double threshold_db) {
    if (!std::isfinite(threshold_db) || threshold_db <= 0.0)
        throw std::invalid_argument("spatial_lobe_threshold: threshold_db must be > 0");
    double peak = 0.0;
    bool any = false;
    for (const auto& cut : pas.cuts)
        for (std::size_t i = 0; i < cut.power_mw.size(); ++i)
            if (bin_present(cut, i)) {
                peak = any ? std::max(peak, cut.power_mw[i]) : cut.power_mw[i];
                any = true;
            }
    if (!any)
        throw std::invalid_argument("spatial_lobe_threshold: PAS has no present bins");
    return peak / std::pow(10.0, threshold_db / 10.0);
}

std::vector<SpatialLobe> segment_lobes(const PowerAngularSpectrum& pas, double slt_mw) {
    if (!std::isfinite(slt_mw) || slt_mw <= 0.0)
        throw std::invalid_argument("segment_lobes: slt_mw must be finite and > 0");

    std::vector<SpatialLobe> lobes;
    for (const auto& cut : pas.cuts) {
        const std::size_t n = cut.power_mw.size();
        if (n == 0)
            continue;
        std::vector<char> qual(n, 0);
        std::size_t n_qual = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (bin_present(cut, i) && cut.power_mw[i] >= slt_mw) {
                qual[i] = 1;
                ++n_qual;
            }
        if (n_qual == 0)
            continue;
        if (n_qual == n) {
            // Full-circle lobe: canonical start at the peak bin (lowest
            // azimuth on ties), spanning all n bins.
            std::size_t peak_bin = 0;
            for (std::size_t i = 1; i < n; ++i)
                if (cut.power_mw[i] > cut.power_mw[peak_bin])
                    peak_bin = i;
            lobes.push_back(make_lobe(pas, cut, peak_bin, n));
            continue;
        }
        // Walk the circle starting just past a non-qualifying bin so every
        // wrap-crossing arc is seen as one contiguous run.
        std::size_t anchor = 0;
        while (qual[anchor])
            ++anchor;
        std::size_t run_start = 0, run_len = 0;
        for (std::size_t j = 1; j <= n; ++j) {
            const std::size_t i = (anchor + j) % n;
            if (qual[i]) {
                if (run_len == 0)
                    run_start = i;
                ++run_len;
            } else if (run_len > 0) {
                lobes.push_back(make_lobe(pas, cut, run_start, run_len));
                run_len = 0;
            }
        }
        if (run_len > 0)
            lobes.push_back(make_lobe(pas, cut, run_start, run_len));
    }

    std::sort(lobes.begin(), lobes.end(), [](const SpatialLobe& a, const SpatialLobe& b) {
        if (a.peak_power_mw != b.peak_power_mw)
            return a.peak_power_mw > b.peak_power_mw;
        const double pa = peak_azimuth(a), pb = peak_azimuth(b);
        if (pa != pb)
            return pa < pb;
        return a.zenith_deg < b.zenith_deg;
    });
    for (std::size_t i = 0; i < lobes.size(); ++i)
        lobes[i].lobe_index = static_cast<int>(i);
    return lobes;
}

int count_lobes(const PowerAngularSpectrum& pas, double threshold_db) {
    return static_cast<int>(segment_lobes(pas, spatial_lobe_threshold(pas, threshold_db)).size());
}

} // namespace aspread
