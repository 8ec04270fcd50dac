// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aspread/angles.hpp"

namespace aspread {

enum class Condition { los, nlos };
enum class Plane { aoa, aod };                    // arrival (RX) / departure (TX)
enum class Metric { asa, asd, zsa, zsd };         // azimuth/zenith spread of arrival/departure
enum class Scope { omni, lobe };

std::string_view to_string(Condition c);
std::string_view to_string(Plane p);
std::string_view to_string(Metric m);
std::string_view to_string(Scope s);
Condition condition_from_string(std::string_view s);  // "LOS"/"NLOS", throws on anything else
Metric metric_from_string(std::string_view s);
Scope scope_from_string(std::string_view s);

// The measurement plane a metric is evaluated on (ASA/ZSA -> AOA, ASD/ZSD -> AOD)
// and whether it spreads azimuth or zenith angles.
Plane metric_plane(Metric m);
bool metric_is_azimuthal(Metric m);

// One resolvable multipath component: amplitude (linear voltage), phase,
// absolute delay, and 3D departure/arrival directions. Power is derived from
// the amplitude (power_linear = amplitude^2, in mW), so the power/amplitude
// identity holds by construction. Immutable after make().
struct Subpath {
    double amplitude = 0.0;       // linear voltage magnitude, sqrt(mW)
    double phase_rad = 0.0;
    double delay_ns = 0.0;
    Direction departure{0.0, 90.0};
    Direction arrival{0.0, 90.0};

    double power_linear() const { return amplitude * amplitude; }  // mW

    // Validates amplitude >= 0, delay_ns >= 0, finite phase.
    static Subpath make(double amplitude, double phase_rad, double delay_ns,
                        Direction departure, Direction arrival);
    // Convenience: construct from power in mW (amplitude = sqrt(power)).
    static Subpath make_from_power(double power_mw, double phase_rad, double delay_ns,
                                   Direction departure, Direction arrival);
};

// A group of subpaths adjacent in delay. Non-empty, ordered by non-decreasing
// delay; make() validates both.
struct TimeCluster {
    std::vector<Subpath> subpaths;

    static TimeCluster make(std::vector<Subpath> subpaths);
};

// Double-directional impulse-response carrier for one link: the full set of
// ground-truth subpaths grouped into time clusters. Phases are stored but the
// engine's statistics are power-based (no coherent field summation).
struct DoubleDirectionalCIR {
    std::string link_id;
    double frequency_ghz = 0.0;
    Condition condition = Condition::los;
    std::vector<TimeCluster> clusters;

    // Validates frequency > 0 and at least one cluster.
    static DoubleDirectionalCIR make(std::string link_id, double frequency_ghz,
                                     Condition condition, std::vector<TimeCluster> clusters);

    // All subpaths across clusters, in cluster order.
    std::vector<Subpath> all_subpaths() const;
};

// One TX/RX pointing-direction power measurement — the sounder's atomic
// output. The *_el_deg fields use the zenith convention ([0, 180], 90 =
// boresight). An absent power_dbm marks a dwell that measured below the noise
// floor; below-noise is never encoded as a sentinel dBm value.
struct DirectionalRecord {
    std::string link_id;
    double frequency_ghz = 0.0;
    Condition condition = Condition::los;
    double tx_az_deg = 0.0;
    double tx_el_deg = 90.0;
    double rx_az_deg = 0.0;
    double rx_el_deg = 90.0;
    std::optional<double> power_dbm;  // absent = below noise floor
    double tx_gain_dbi = 0.0;
    double rx_gain_dbi = 0.0;

    // Wraps azimuths, validates zeniths in [0, 180], finite gains/frequency,
    // finite power when present.
    static DirectionalRecord make(std::string link_id, double frequency_ghz,
                                  Condition condition, double tx_az_deg, double tx_el_deg,
                                  double rx_az_deg, double rx_el_deg,
                                  std::optional<double> power_dbm, double tx_gain_dbi,
                                  double rx_gain_dbi);
};

} // namespace aspread
