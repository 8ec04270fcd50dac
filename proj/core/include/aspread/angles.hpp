// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <numbers>

namespace aspread {

// Angle conventions used throughout:
//   - azimuth: degrees in [0, 360), circular; all stored azimuths are wrapped
//   - zenith:  degrees in [0, 180], 90 = horizon/boresight; not circular
// No module performs raw subtraction on azimuths — wrap_azimuth and
// circular_distance are the single choke point for circular arithmetic.

constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Wraps an azimuth into [0, 360). Idempotent. Throws std::invalid_argument on
// non-finite input.
double wrap_azimuth(double azimuth_deg);

// Shortest angular distance between two azimuths, in [0, 180]. Symmetric and
// satisfies the triangle inequality. Throws std::invalid_argument on
// non-finite input.
double circular_distance(double a_deg, double b_deg);

// Power ratio conversions: db_to_linear(x) = 10^(x/10). linear_to_db requires
// a strictly positive ratio and throws std::invalid_argument otherwise.
// Round-trip identity holds to 1e-12 relative.
double db_to_linear(double value_db);
double linear_to_db(double ratio);

// A pointing or propagation direction. Construction wraps the azimuth and
// rejects zeniths outside [0, 180] or non-finite components. Immutable value.
struct Direction {
    double azimuth_deg;
    double zenith_deg;

    static Direction make(double azimuth_deg, double zenith_deg);
};

} // namespace aspread
