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
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aspread/lobes.hpp"
#include "aspread/model.hpp"
#include "aspread/rng.hpp"

namespace aspread {

// Monte Carlo ensemble description. targets[i] is the (mu_lg, sigma_lg)
// log-normal law for Metric(i) — order asa, asd, zsa, zsd.
struct EnsembleSpec {
    std::size_t n_links = 1;
    std::array<std::pair<double, double>, 4> targets{};
    Condition condition = Condition::los;
    double frequency_ghz = 6.75;
    std::uint64_t seed = 1;
    std::pair<int, int> lobe_count_range{1, 4};
};

// Generated links are LinkLobes rows with target_as_deg filled (the drawn
// ground truth). When a zenith target is nonzero the plane's azimuth lobes
// are duplicated onto the two cuts 90±e at half power (which preserves the
// azimuth spread exactly), so the emitted lobe count is twice the drawn
// azimuth lobe count.
struct EnsembleDataset {
    EnsembleSpec spec;
    std::vector<LinkLobes> links;
};

// One log-normal draw: 10^(mu_lg + sigma_lg * z), z standard normal.
// Requires sigma_lg >= 0.
double draw_as_target(RngStream& rng, double mu_lg, double sigma_lg);

// Constructs one plane's lobes whose omni_as hits azimuth_target_deg and
// zenith_target_deg to floating-point precision (far inside the 0.1°
// acceptance tolerance), re-measured by the real omni_as. All lobes share
// the same peak power and 1°-spaced member arcs.
// Multi-lobe configurations carry a <= 6 dB triangular member taper and meet
// the azimuth target by bisection on the lobe-center dispersion; a single
// lobe meets it by bisection on its end-member weight at the smallest arc
// length that brackets the target. The zenith target is met exactly by the
// closed-form two-cut split. Iteration cap 1000 per bisection; on bracket
// failure the construction is redrawn with progressively narrower arcs
// (bounded rejection sampling) before an error naming the achievable bound
// is thrown. Requires targets >= 0, lobe_count >= 1; azimuth targets at or
// below 0.01° produce a single single-member lobe (exactly 0° spread).
// Targets above 368° are refused (std::invalid_argument naming the bound):
// past it the solved resultant sinks under double-precision noise and the
// estimator's own R >= 1e-12 degeneracy floor, so the output could not be
// re-measured.
std::vector<SpatialLobe> generate_link(RngStream& rng, double azimuth_target_deg,
                                       double zenith_target_deg, int lobe_count);

// n_links independent links; per-link RNG substreams derived from spec.seed,
// so the dataset is bit-identical for a given spec on any platform. Target
// draws beyond the 368° constructible bound are rejection-resampled (at most
// 64 tries per draw — a tail event at any plausible target distribution).
// Errors are rethrown with the failing link index.
EnsembleDataset generate_ensemble(const EnsembleSpec& spec);

} // namespace aspread
