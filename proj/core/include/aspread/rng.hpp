// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace aspread {

// splitmix64 step — used to derive independent substream seeds. Fixed
// constants from the reference implementation; bit-stable everywhere.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic, platform-independent random stream: mt19937_64 (whose output
// sequence the standard fixes exactly) with hand-rolled uniform and
// Box-Muller normal transforms, because the std::*_distribution adaptors are
// implementation-defined and would break bit-identical datasets across
// standard libraries.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    // Substream `index` of a root seed; parallel per-link generation with
    // substreams reproduces the sequential dataset exactly.
    static RngStream substream(std::uint64_t root_seed, std::uint64_t index) {
        std::uint64_t s = root_seed ^ (0xa02bdbf7bb3c0a7ULL * (index + 1));
        return RngStream(splitmix64_next(s));
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller; caches the second deviate of each pair.
    double normal01() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace aspread
