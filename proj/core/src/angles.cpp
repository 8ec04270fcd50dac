// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#include "aspread/angles.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aspread {

double wrap_azimuth(double azimuth_deg) {
    if (!std::isfinite(azimuth_deg))
        throw std::invalid_argument("wrap_azimuth: input must be finite");
    double r = std::fmod(azimuth_deg, 360.0);
    if (r < 0.0)
        r += 360.0;
    if (r >= 360.0)  // fmod of values just below a multiple of 360 can round up
        r -= 360.0;
    return r;
}

double circular_distance(double a_deg, double b_deg) {
    if (!std::isfinite(a_deg) || !std::isfinite(b_deg))
        throw std::invalid_argument("circular_distance: inputs must be finite");
    const double d = std::fabs(wrap_azimuth(a_deg) - wrap_azimuth(b_deg));
    return d > 180.0 ? 360.0 - d : d;
}

double db_to_linear(double value_db) {
    if (!std::isfinite(value_db))
        throw std::invalid_argument("db_to_linear: input must be finite");
    return std::pow(10.0, value_db / 10.0);
}

double linear_to_db(double ratio) {
    if (!std::isfinite(ratio) || ratio <= 0.0)
        throw std::invalid_argument("linear_to_db: ratio must be finite and > 0, got " +
                                    std::to_string(ratio));
    return 10.0 * std::log10(ratio);
}

Direction Direction::make(double azimuth_deg, double zenith_deg) {
    if (!std::isfinite(zenith_deg) || zenith_deg < 0.0 || zenith_deg > 180.0)
        throw std::invalid_argument("Direction: zenith must be in [0, 180], got " +
                                    std::to_string(zenith_deg));
    return Direction{wrap_azimuth(azimuth_deg), zenith_deg};
}

} // namespace aspread
