// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#include "aspread/pas.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "aspread/angles.hpp"

namespace aspread {

std::size_t pas_bin_index(double azimuth_deg, double resolution_deg, std::size_t n_bins) {
    if (!(resolution_deg > 0.0) || n_bins == 0)
        throw std::invalid_argument("pas_bin_index: resolution must be > 0 and n_bins >= 1");
    const double az = wrap_azimuth(azimuth_deg);
    const auto idx = static_cast<long long>(std::llround(az / resolution_deg));
    return static_cast<std::size_t>(idx) % n_bins;
}

DirectionalRecord remove_antenna_gain(const DirectionalRecord& record, Plane plane) {
    DirectionalRecord out = record;
    const double gain = plane == Plane::aoa ? record.rx_gain_dbi : record.tx_gain_dbi;
    if (out.power_dbm)
        *out.power_dbm -= gain;
    (plane == Plane::aoa ? out.rx_gain_dbi : out.tx_gain_dbi) = 0.0;
    return out;
}

DirectionalRecord remove_antenna_gain(const DirectionalRecord& record) {
    return remove_antenna_gain(remove_antenna_gain(record, Plane::aoa), Plane::aod);
}

namespace {

std::size_t grid_bin_count(double resolution_deg) {
    if (!std::isfinite(resolution_deg) || resolution_deg <= 0.0)
        throw std::invalid_argument("synthesize_pas: resolution must be finite and > 0");
    const double nb = 360.0 / resolution_deg;
    const auto n = static_cast<long long>(std::llround(nb));
    if (n < 1 || std::abs(nb - static_cast<double>(n)) > 1e-9)
        throw std::invalid_argument(
            "synthesize_pas: 360 must be an integer multiple of resolution_deg");
    return static_cast<std::size_t>(n);
}

// Fills absent bins strictly between circularly-consecutive measured bins
// with linear-domain interpolation. A below-noise dwell inside the gap is a
// real observation of no energy, so such gaps are left untouched.
void interpolate_cut(ElevationCut& cut) {
    const std::size_t n = cut.power_mw.size();
    std::vector<std::size_t> measured;
    for (std::size_t i = 0; i < n; ++i)
        if (cut.state[i] == BinState::measured)
            measured.push_back(i);
    if (measured.size() < 2)
        return;
    for (std::size_t k = 0; k < measured.size(); ++k) {
        const std::size_t a = measured[k];
        const std::size_t b = measured[(k + 1) % measured.size()];
        const std::size_t gap = (b + n - a) % n; // bins from a to b going forward
        if (gap <= 1)
            continue;
        bool blocked = false;
        for (std::size_t step = 1; step < gap && !blocked; ++step)
            blocked = cut.state[(a + step) % n] == BinState::below_noise;
        if (blocked)
            continue;
        const double pa = cut.power_mw[a];
        const double pb = cut.power_mw[b];
        for (std::size_t step = 1; step < gap; ++step) {
            const std::size_t i = (a + step) % n;
            cut.power_mw[i] = pa + (pb - pa) * static_cast<double>(step) /
                                       static_cast<double>(gap);
            cut.state[i] = BinState::interpolated;
        }
    }
}

} // namespace

PowerAngularSpectrum synthesize_pas(std::span<const DirectionalRecord> records, Plane plane,
                                    double resolution_deg) {
    if (records.empty())
        throw std::invalid_argument("synthesize_pas: at least one record required");
    const std::size_t n_bins = grid_bin_count(resolution_deg);

    const std::string& link_id = records.front().link_id;
    const double frequency_ghz = records.front().frequency_ghz;
    bool any_present = false;
    for (const auto& r : records) {
        if (r.link_id != link_id)
            throw std::invalid_argument("synthesize_pas: records span multiple link_ids ('" +
                                        link_id + "' vs '" + r.link_id + "')");
        if (r.frequency_ghz != frequency_ghz)
            throw std::invalid_argument("synthesize_pas: records span multiple frequencies");
        any_present = any_present || r.power_dbm.has_value();
    }
    if (!any_present)
        throw std::invalid_argument(
            "synthesize_pas: all records below noise, nothing to synthesize");

    // Group records into elevation cuts keyed by the exact plane zenith.
    std::map<double, ElevationCut> cuts;
    for (const auto& raw : records) {
        const DirectionalRecord r = remove_antenna_gain(raw, plane);
        const double zenith = plane == Plane::aoa ? r.rx_el_deg : r.tx_el_deg;
        const double azimuth = plane == Plane::aoa ? r.rx_az_deg : r.tx_az_deg;
        auto [it, inserted] = cuts.try_emplace(zenith);
        ElevationCut& cut = it->second;
        if (inserted) {
            cut.zenith_deg = zenith;
            cut.power_mw.assign(n_bins, 0.0);
            cut.state.assign(n_bins, BinState::absent);
        }
        const std::size_t bin = pas_bin_index(azimuth, resolution_deg, n_bins);
        if (cut.state[bin] != BinState::absent)
            throw std::invalid_argument(
                "synthesize_pas: duplicate records for azimuth bin " + std::to_string(bin) +
                " of elevation cut " + std::to_string(zenith) + " (ambiguous)");
        if (r.power_dbm) {
            cut.power_mw[bin] = std::pow(10.0, *r.power_dbm / 10.0);
            cut.state[bin] = BinState::measured;
        } else {
            cut.state[bin] = BinState::below_noise;
        }
    }

    PowerAngularSpectrum pas;
    pas.link_id = link_id;
    pas.plane = plane;
    pas.resolution_deg = resolution_deg;
    pas.cuts.reserve(cuts.size());
    for (auto& [zenith, cut] : cuts) {
        interpolate_cut(cut);
        pas.cuts.push_back(std::move(cut));
    }
    return pas;
}

double total_omni_power(std::span<const PowerAngularSpectrum> pas_set) {
    if (pas_set.empty())
        throw std::invalid_argument("total_omni_power: at least one spectrum required");
    double sum = 0.0;
    bool any = false;
    for (const auto& pas : pas_set)
        for (const auto& cut : pas.cuts)
            for (std::size_t i = 0; i < cut.power_mw.size(); ++i)
                if (cut.state[i] == BinState::measured) {
                    sum += cut.power_mw[i];
                    any = true;
                }
    if (!any)
        throw std::invalid_argument("total_omni_power: no measured bins in the spectrum set");
    return sum;
}

} // namespace aspread
