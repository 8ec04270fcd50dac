// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#include "aspread/model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace aspread {

std::string_view to_string(Condition c) { return c == Condition::los ? "LOS" : "NLOS"; }
std::string_view to_string(Plane p) { return p == Plane::aoa ? "AOA" : "AOD"; }

std::string_view to_string(Metric m) {
    switch (m) {
    case Metric::asa: return "ASA";
    case Metric::asd: return "ASD";
    case Metric::zsa: return "ZSA";
    case Metric::zsd: return "ZSD";
    }
    throw std::invalid_argument("to_string: invalid Metric");
}

std::string_view to_string(Scope s) { return s == Scope::omni ? "omni" : "lobe"; }

Condition condition_from_string(std::string_view s) {
    if (s == "LOS")
        return Condition::los;
    if (s == "NLOS")
        return Condition::nlos;
    throw std::invalid_argument("condition must be LOS or NLOS, got '" + std::string(s) + "'");
}

Metric metric_from_string(std::string_view s) {
    if (s == "ASA")
        return Metric::asa;
    if (s == "ASD")
        return Metric::asd;
    if (s == "ZSA")
        return Metric::zsa;
    if (s == "ZSD")
        return Metric::zsd;
    throw std::invalid_argument("metric must be one of ASA/ASD/ZSA/ZSD, got '" + std::string(s) +
                                "'");
}

Scope scope_from_string(std::string_view s) {
    if (s == "omni")
        return Scope::omni;
    if (s == "lobe")
        return Scope::lobe;
    throw std::invalid_argument("scope must be omni or lobe, got '" + std::string(s) + "'");
}

Plane metric_plane(Metric m) {
    return (m == Metric::asa || m == Metric::zsa) ? Plane::aoa : Plane::aod;
}

bool metric_is_azimuthal(Metric m) { return m == Metric::asa || m == Metric::asd; }

Subpath Subpath::make(double amplitude, double phase_rad, double delay_ns, Direction departure,
                      Direction arrival) {
    if (!std::isfinite(amplitude) || amplitude < 0.0)
        throw std::invalid_argument("Subpath: amplitude must be finite and >= 0");
    if (!std::isfinite(phase_rad))
        throw std::invalid_argument("Subpath: phase must be finite");
    if (!std::isfinite(delay_ns) || delay_ns < 0.0)
        throw std::invalid_argument("Subpath: delay must be finite and >= 0");
    // Re-validate directions so aggregate-constructed inputs cannot smuggle
    // invalid angles through.
    departure = Direction::make(departure.azimuth_deg, departure.zenith_deg);
    arrival = Direction::make(arrival.azimuth_deg, arrival.zenith_deg);
    return Subpath{amplitude, phase_rad, delay_ns, departure, arrival};
}

Subpath Subpath::make_from_power(double power_mw, double phase_rad, double delay_ns,
                                 Direction departure, Direction arrival) {
    if (!std::isfinite(power_mw) || power_mw < 0.0)
        throw std::invalid_argument("Subpath: power must be finite and >= 0");
    return make(std::sqrt(power_mw), phase_rad, delay_ns, departure, arrival);
}

TimeCluster TimeCluster::make(std::vector<Subpath> subpaths) {
    if (subpaths.empty())
        throw std::invalid_argument("TimeCluster: at least one subpath required");
    for (std::size_t i = 1; i < subpaths.size(); ++i)
        if (subpaths[i].delay_ns < subpaths[i - 1].delay_ns)
            throw std::invalid_argument(
                "TimeCluster: subpaths must be ordered by non-decreasing delay");
    return TimeCluster{std::move(subpaths)};
}

DoubleDirectionalCIR DoubleDirectionalCIR::make(std::string link_id, double frequency_ghz,
                                                Condition condition,
                                                std::vector<TimeCluster> clusters) {
    if (!std::isfinite(frequency_ghz) || frequency_ghz <= 0.0)
        throw std::invalid_argument("DoubleDirectionalCIR: frequency must be > 0");
    if (clusters.empty())
        throw std::invalid_argument("DoubleDirectionalCIR: at least one cluster required");
    return DoubleDirectionalCIR{std::move(link_id), frequency_ghz, condition,
                                std::move(clusters)};
}

std::vector<Subpath> DoubleDirectionalCIR::all_subpaths() const {
    std::vector<Subpath> out;
    for (const auto& c : clusters)
        out.insert(out.end(), c.subpaths.begin(), c.subpaths.end());
    return out;
}

DirectionalRecord DirectionalRecord::make(std::string link_id, double frequency_ghz,
                                          Condition condition, double tx_az_deg,
                                          double tx_el_deg, double rx_az_deg, double rx_el_deg,
                                          std::optional<double> power_dbm, double tx_gain_dbi,
                                          double rx_gain_dbi) {
    if (!std::isfinite(frequency_ghz) || frequency_ghz <= 0.0)
        throw std::invalid_argument("DirectionalRecord: frequency must be > 0");
    const Direction tx = Direction::make(tx_az_deg, tx_el_deg);
    const Direction rx = Direction::make(rx_az_deg, rx_el_deg);
    if (power_dbm && !std::isfinite(*power_dbm))
        throw std::invalid_argument(
            "DirectionalRecord: power must be finite or absent (below-noise)");
    if (!std::isfinite(tx_gain_dbi) || !std::isfinite(rx_gain_dbi))
        throw std::invalid_argument("DirectionalRecord: gains must be finite");
    return DirectionalRecord{std::move(link_id), frequency_ghz, condition,
                             tx.azimuth_deg,     tx.zenith_deg,  rx.azimuth_deg,
                             rx.zenith_deg,      power_dbm,      tx_gain_dbi,
                             rx_gain_dbi};
}

} // namespace aspread
