// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "aspread/ensemble.hpp"
#include "aspread/lobes.hpp"
#include "aspread/pas.hpp"
#include "aspread/rng.hpp"
#include "aspread/sounder.hpp"
#include "aspread/stats.hpp"

namespace {

using namespace aspread;

std::vector<DirectionalRecord> make_sweep_records(std::size_t n_dwells) {
    std::vector<DirectionalRecord> records;
    records.reserve(n_dwells);
    const double step = 360.0 / static_cast<double>(n_dwells);
    for (std::size_t i = 0; i < n_dwells; ++i) {
        const double az = static_cast<double>(i) * step;
        const double off = circular_distance(az, 180.0);
        // Two-lobe synthetic sweep: main response at 180°, echo at 60°.
        const double echo = circular_distance(az, 60.0);
        const double dbm = std::max(-60.0 - 0.01 * off * off, -72.0 - 0.02 * echo * echo);
        records.push_back(DirectionalRecord::make("bench", 6.75, Condition::nlos, 0.0, 90.0,
                                                  az, 90.0, dbm, 15.0, 15.0));
    }
    return records;
}

SyntheticEnvironment make_environment(std::size_t n_subpaths) {
    RngStream rng(42);
    SyntheticEnvironment env;
    env.frequency_ghz = 16.95;
    env.noise_floor_dbm = -95.0;
    for (std::size_t i = 0; i < n_subpaths; ++i)
        env.truth_subpaths.push_back(Subpath::make_from_power(
            rng.uniform(1e-9, 1e-6), 0.0, rng.uniform(0.0, 500.0),
            Direction::make(rng.uniform(0.0, 360.0), rng.uniform(60.0, 120.0)),
            Direction::make(rng.uniform(0.0, 360.0), rng.uniform(60.0, 120.0))));
    return env;
}

void BM_CircularAs(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    RngStream rng(7);
    std::vector<double> angles(n), powers(n);
    for (std::size_t i = 0; i < n; ++i) {
        angles[i] = rng.uniform(0.0, 360.0);
        powers[i] = rng.uniform(0.1, 1.0);
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(circular_as(angles, powers));
}
BENCHMARK(BM_CircularAs)->Range(8, 1 << 13);

void BM_SynthesizePas(benchmark::State& state) {
    const auto records = make_sweep_records(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(synthesize_pas(records, Plane::aoa, 1.0));
}
BENCHMARK(BM_SynthesizePas)->RangeMultiplier(4)->Range(9, 360);

void BM_SegmentLobes(benchmark::State& state) {
    const auto records = make_sweep_records(360);
    const PowerAngularSpectrum pas = synthesize_pas(records, Plane::aoa, 1.0);
    const double slt = spatial_lobe_threshold(pas, 10.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(segment_lobes(pas, slt));
}
BENCHMARK(BM_SegmentLobes);

void BM_RunProcedure(benchmark::State& state) {
    const SyntheticEnvironment env = make_environment(static_cast<std::size_t>(state.range(0)));
    const AntennaModel horn{15.0, 30.0, 30.0, 30.0};
    SweepConfig config;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_procedure(env, config, horn, horn));
}
BENCHMARK(BM_RunProcedure)->Arg(1)->Arg(8)->Arg(32);

void BM_GenerateLink(benchmark::State& state) {
    for (auto _ : state) {
        RngStream rng(11);
        benchmark::DoNotOptimize(generate_link(rng, 34.0, 5.0, 3));
    }
}
BENCHMARK(BM_GenerateLink);

} // namespace

BENCHMARK_MAIN();
