// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aspread/lobes.hpp"
#include "aspread/model.hpp"

namespace aspread {

// Raised when the power-weighted resultant length R falls below the 1e-12
// floor (e.g. antipodal cancellation): ln(R) diverges and the spread value
// would be meaningless, so a diagnostic beats a huge number.
class degenerate_spread_error : public std::runtime_error {
  public:
    explicit degenerate_spread_error(const std::string& what) : std::runtime_error(what) {}
};

// One RMS angular-spread sample.
struct ASValue {
    Metric metric = Metric::asa;
    Scope scope = Scope::omni;
    double value_deg = 0.0;  // finite, >= 0
    std::string link_id;
    int lobe_index = -1;     // lobe scope only; -1 for omni
};

// Log-normal aggregate for one (metric, scope, condition, frequency) cell.
// expectation_deg always equals 10^(mu_lg + sigma_lg^2/2).
struct LogNormalSummary {
    Metric metric = Metric::asa;
    Scope scope = Scope::omni;
    Condition condition = Condition::los;
    double frequency_ghz = 0.0;
    double mu_lg = 0.0;      // mean of log10(AS_deg)
    double sigma_lg = 0.0;   // population std (divisor n) of log10(AS_deg)
    double expectation_deg = 0.0;
    std::size_t n_samples = 0;
};

// Power-weighted circular RMS spread: angles are converted to radians,
// R = |sum p*exp(j*theta)| / sum p, and the result sqrt(-2 ln R) is returned
// in degrees. Requires equal-length non-empty spans, all powers > 0. Throws
// degenerate_spread_error if R < 1e-12 and std::invalid_argument on
// precondition violations. Invariant under global angle rotation and under
// uniform power scaling.
double circular_as(std::span<const double> angles_deg, std::span<const double> powers_linear);

// Spread over the pooled members of all lobes. Azimuthal metrics (ASA/ASD)
// spread member azimuths; zenith metrics (ZSA/ZSD) spread each member's
// elevation-cut zenith, weighted by member power. Requires at least one lobe
// with at least one member; errors propagate from circular_as.
ASValue omni_as(std::span<const SpatialLobe> lobes, Metric metric, std::string link_id = {});

// Same spread restricted to a single lobe's members.
ASValue lobe_as(const SpatialLobe& lobe, Metric metric, std::string link_id = {});

// Log-domain fit: mu = mean(log10 v), sigma = population standard deviation
// (divisor n) of log10 v. All values must be > 0 (zero-AS samples are
// excluded by the caller, with a logged count) and n >= 1; throws
// std::invalid_argument otherwise.
std::pair<double, double> lognormal_fit(std::span<const double> values_deg);

// Expectation of the fitted log-normal: 10^(mu + sigma^2/2), in degrees.
// Requires sigma_lg >= 0 and finite inputs.
double lognormal_expectation_deg(double mu_lg, double sigma_lg);

// Step-function empirical CDF: sorted distinct values with cumulative
// probability i/n, duplicates collapsed onto their last index (so the final
// entry always has probability 1). Throws std::invalid_argument when empty.
std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> values);

} // namespace aspread
