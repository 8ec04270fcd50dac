// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#include "aspread/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aspread/angles.hpp"

namespace aspread {

double circular_as(std::span<const double> angles_deg, std::span<const double> powers_linear) {
    if (angles_deg.empty())
        throw std::invalid_argument("circular_as: at least one sample required");
    if (angles_deg.size() != powers_linear.size())
        throw std::invalid_argument("circular_as: angle/power spans must have equal length");

    double sum_p = 0.0, re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < angles_deg.size(); ++i) {
        const double p = powers_linear[i];
        if (!std::isfinite(p) || p <= 0.0)
            throw std::invalid_argument("circular_as: powers must be finite and > 0");
        if (!std::isfinite(angles_deg[i]))
            throw std::invalid_argument("circular_as: angles must be finite");
        const double th = deg2rad(angles_deg[i]);
        sum_p += p;
        re += p * std::cos(th);
        im += p * std::sin(th);
    }
    const double r = std::hypot(re, im) / sum_p;
    if (r < 1e-12)
        throw degenerate_spread_error(
            "circular_as: resultant length below 1e-12, spread undefined");
    // Double-precision trigonometry cannot distinguish resultants within
    // 1e-12 of unity from a point mass (the gap corresponds to a spread of
    // 8e-5 deg). Snap them to exactly 0 so fully concentrated inputs — a
    // single member, or coincident angles at any nonzero azimuth — report a
    // true zero and are excluded from log-domain fits instead of injecting
    // log10(1e-6)-sized outliers. Real spreads sit far above this: even
    // 0.01 deg leaves 1 - r at 1.5e-8.
    if (r >= 1.0 - 1e-12)
        return 0.0;
    return rad2deg(std::sqrt(-2.0 * std::log(r)));
}

namespace {

// Pools (angle, power) pairs from lobe members: azimuthal metrics take each
// member's azimuth; zenith metrics take the owning cut's zenith per member.
void append_lobe_samples(const SpatialLobe& lobe, bool azimuthal, std::vector<double>& angles,
                         std::vector<double>& powers) {
    for (const auto& [az_deg, p_mw] : lobe.members) {
        angles.push_back(azimuthal ? az_deg : lobe.zenith_deg);
        powers.push_back(p_mw);
    }
}

ASValue spread_of_samples(const std::vector<double>& angles, const std::vector<double>& powers,
                          Metric metric, Scope scope, std::string link_id, int lobe_index) {
    ASValue v;
    v.metric = metric;
    v.scope = scope;
    v.value_deg = circular_as(angles, powers);
    v.link_id = std::move(link_id);
    v.lobe_index = lobe_index;
    return v;
}

} // namespace

ASValue omni_as(std::span<const SpatialLobe> lobes, Metric metric, std::string link_id) {
    if (lobes.empty())
        throw std::invalid_argument("omni_as: at least one lobe required");
    std::vector<double> angles, powers;
    for (const auto& lobe : lobes)
        append_lobe_samples(lobe, metric_is_azimuthal(metric), angles, powers);
    if (angles.empty())
        throw std::invalid_argument("omni_as: lobes have no members");
    return spread_of_samples(angles, powers, metric, Scope::omni, std::move(link_id), -1);
}

ASValue lobe_as(const SpatialLobe& lobe, Metric metric, std::string link_id) {
    if (lobe.members.empty())
        throw std::invalid_argument("lobe_as: lobe has no members");
    std::vector<double> angles, powers;
    append_lobe_samples(lobe, metric_is_azimuthal(metric), angles, powers);
    return spread_of_samples(angles, powers, metric, Scope::lobe, std::move(link_id),
                             lobe.lobe_index);
}

std::pair<double, double> lognormal_fit(std::span<const double> values_deg) {
    if (values_deg.empty())
        throw std::invalid_argument("lognormal_fit: at least one value required");
    std::vector<double> logs;
    logs.reserve(values_deg.size());
    for (double v : values_deg) {
        if (!std::isfinite(v) || v <= 0.0)
            throw std::invalid_argument("lognormal_fit: values must be finite and > 0");
        logs.push_back(std::log10(v));
    }
    double mu = 0.0;
    for (double l : logs)
        mu += l;
    mu /= static_cast<double>(logs.size());
    double var = 0.0;
    for (double l : logs)
        var += (l - mu) * (l - mu);
    var /= static_cast<double>(logs.size()); // population variance (divisor n)
    return {mu, std::sqrt(var)};
}

double lognormal_expectation_deg(double mu_lg, double sigma_lg) {
    if (!std::isfinite(mu_lg) || !std::isfinite(sigma_lg) || sigma_lg < 0.0)
        throw std::invalid_argument(
            "lognormal_expectation_deg: mu must be finite, sigma finite and >= 0");
    return std::pow(10.0, mu_lg + sigma_lg * sigma_lg / 2.0);
}

std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("empirical_cdf: at least one value required");
    std::vector<double> sorted(values.begin(), values.end());
    for (double v : sorted)
        if (!std::isfinite(v))
            throw std::invalid_argument("empirical_cdf: values must be finite");
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double p = static_cast<double>(i + 1) / n;
        if (!out.empty() && out.back().first == sorted[i])
            out.back().second = p; // duplicate value: keep the highest step
        else
            out.emplace_back(sorted[i], p);
    }
    return out;
}

} // namespace aspread
