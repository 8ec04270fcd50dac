// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#include "doctest.h"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "aspread/angles.hpp"
#include "aspread/pas.hpp"

using namespace aspread;

namespace {

// Measured dwell with zero antenna gains, so power_dbm converts directly to
// the PAS bin power in mW.
DirectionalRecord dwell_mw(double rx_az, double power_mw, double rx_el = 90.0) {
    return DirectionalRecord::make("L", 6.75, Condition::los, 0.0, 90.0, rx_az, rx_el,
                                   linear_to_db(power_mw), 0.0, 0.0);
}

DirectionalRecord dwell_below_noise(double rx_az, double rx_el = 90.0) {
    return DirectionalRecord::make("L", 6.75, Condition::los, 0.0, 90.0, rx_az, rx_el,
                                   std::nullopt, 0.0, 0.0);
}

} // namespace

TEST_SUITE("pas") {

TEST_CASE("pas_bin_index rounds to the nearest grid direction with wrap") {
    CHECK(pas_bin_index(0.0, 1.0, 360) == 0);
    CHECK(pas_bin_index(10.4, 1.0, 360) == 10);
    CHECK(pas_bin_index(10.6, 1.0, 360) == 11);
    CHECK(pas_bin_index(359.7, 1.0, 360) == 0);   // nearest grid point wraps to 0
    CHECK(pas_bin_index(370.0, 1.0, 360) == 10);  // azimuth wrapped first
    CHECK(pas_bin_index(90.0, 2.0, 180) == 45);
    CHECK_THROWS_AS(pas_bin_index(0.0, 0.0, 360), std::invalid_argument);
    CHECK_THROWS_AS(pas_bin_index(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("remove_antenna_gain subtracts only the requested plane's gain") {
    const auto r = DirectionalRecord::make("L", 6.75, Condition::los, 40.0, 90.0, 80.0,
                                           90.0, -50.0, 20.0, 15.0);

    const auto aoa = remove_antenna_gain(r, Plane::aoa);
    CHECK(*aoa.power_dbm == doctest::Approx(-65.0).epsilon(1e-12));  // RX gain 15 dBi
    CHECK(aoa.rx_gain_dbi == 0.0);
    CHECK(aoa.tx_gain_dbi == 20.0);

    const auto aod = remove_antenna_gain(r, Plane::aod);
    CHECK(*aod.power_dbm == doctest::Approx(-70.0).epsilon(1e-12));  // TX gain 20 dBi
    CHECK(aod.tx_gain_dbi == 0.0);

    const auto both = remove_antenna_gain(r);
    CHECK(*both.power_dbm == doctest::Approx(-85.0).epsilon(1e-12));

    // Zero gain leaves power unchanged; below-noise dwell has no power to adjust.
    const auto zero = DirectionalRecord::make("L", 6.75, Condition::los, 0, 90, 0, 90,
                                              -50.0, 0.0, 0.0);
    CHECK(*remove_antenna_gain(zero, Plane::aoa).power_dbm == -50.0);
    const auto below = dwell_below_noise(0.0);
    CHECK_FALSE(remove_antenna_gain(below, Plane::aoa).power_dbm.has_value());
}

TEST_CASE("synthesize_pas grid covers the circle") {
    const std::vector<DirectionalRecord> recs{dwell_mw(0.0, 1.0)};
    for (double res : {1.0, 2.0, 5.0, 0.5}) {
        const auto pas = synthesize_pas(recs, Plane::aoa, res);
        CHECK(static_cast<double>(pas.n_bins()) * res == doctest::Approx(360.0));
        CHECK(pas.resolution_deg == res);
    }
    CHECK_THROWS_AS(synthesize_pas(recs, Plane::aoa, 7.0), std::invalid_argument);
    CHECK_THROWS_AS(synthesize_pas({}, Plane::aoa, 1.0), std::invalid_argument);
}

TEST_CASE("measured bins carry the gain-removed record power") {
    const auto r = DirectionalRecord::make("L", 6.75, Condition::los, 0.0, 90.0, 30.0,
                                           90.0, -47.0, 20.0, 15.0);
    const auto pas = synthesize_pas(std::vector{r}, Plane::aoa, 1.0);
    REQUIRE(pas.cuts.size() == 1);
    const auto& cut = pas.cuts.front();
    CHECK(cut.state[30] == BinState::measured);
    // -47 dBm minus 15 dBi RX gain = -62 dBm.
    CHECK(cut.power_mw[30] ==
          doctest::Approx(std::pow(10.0, -6.2)).epsilon(1e-12));
}

TEST_CASE("linear power interpolation between measured neighbours") {
    const std::vector<DirectionalRecord> recs{dwell_mw(0.0, 0.1), dwell_mw(30.0, 0.3)};
    const auto pas = synthesize_pas(recs, Plane::aoa, 1.0);
    const auto& cut = pas.cuts.front();

    CHECK(cut.state[15] == BinState::interpolated);
    CHECK(cut.power_mw[15] == doctest::Approx(0.2).epsilon(1e-12));

    // Linear in angle within the gap.
    CHECK(cut.power_mw[10] == doctest::Approx(0.1 + 0.2 * 10.0 / 30.0).epsilon(1e-12));

    // The long way around (30 -> 360/0) is also a measured-to-measured gap:
    // half way (az 195, 165 of 330 bins past az 30) interpolates linearly.
    CHECK(cut.state[195] == BinState::interpolated);
    CHECK(cut.power_mw[195] ==
          doctest::Approx(0.3 + (0.1 - 0.3) * 165.0 / 330.0).epsilon(1e-12));
}

TEST_CASE("equal measured powers interpolate to the same value") {
    const std::vector<DirectionalRecord> recs{dwell_mw(100.0, 0.25), dwell_mw(130.0, 0.25)};
    const auto pas = synthesize_pas(recs, Plane::aoa, 1.0);
    CHECK(pas.cuts.front().power_mw[115] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("a single measured direction leaves every other bin absent") {
    const auto pas = synthesize_pas(std::vector{dwell_mw(0.0, 1.0)}, Plane::aoa, 1.0);
    const auto& cut = pas.cuts.front();
    CHECK(cut.state[0] == BinState::measured);
    for (std::size_t i = 1; i < cut.state.size(); ++i) {
        CHECK(cut.state[i] == BinState::absent);
        CHECK(cut.power_mw[i] == 0.0);
    }
}

TEST_CASE("below-noise dwells block interpolation through their gap") {
    const std::vector<DirectionalRecord> recs{dwell_mw(0.0, 0.1), dwell_below_noise(10.0),
                                              dwell_mw(20.0, 0.3)};
    const auto pas = synthesize_pas(recs, Plane::aoa, 1.0);
    const auto& cut = pas.cuts.front();

    CHECK(cut.state[10] == BinState::below_noise);
    for (std::size_t i : {1, 5, 9, 11, 15, 19})
        CHECK(cut.state[i] == BinState::absent);  // blocked gap stays unfilled

    // The opposite arc (20 -> 0 the long way) has no below-noise observation,
    // so it interpolates.
    CHECK(cut.state[190] == BinState::interpolated);
}

TEST_CASE("interpolated bins lie only between measured bins") {
    const std::vector<DirectionalRecord> recs{dwell_mw(40.0, 0.2), dwell_mw(50.0, 0.4),
                                              dwell_below_noise(300.0)};
    const auto pas = synthesize_pas(recs, Plane::aoa, 1.0);
    const auto& cut = pas.cuts.front();
    for (std::size_t i = 0; i < cut.state.size(); ++i) {
        if (cut.state[i] != BinState::interpolated)
            continue;
        // Walk outwards both ways: the nearest non-interpolated bin on each
        // side must be measured.
        std::size_t left = i, right = i;
        const std::size_t n = cut.state.size();
        while (cut.state[left] == BinState::interpolated)
            left = (left + n - 1) % n;
        while (cut.state[right] == BinState::interpolated)
            right = (right + 1) % n;
        CHECK(cut.state[left] == BinState::measured);
        CHECK(cut.state[right] == BinState::measured);
    }
}

TEST_CASE("records of one pointing per bin: duplicates are rejected") {
    const std::vector<DirectionalRecord> recs{dwell_mw(10.0, 0.1), dwell_mw(10.3, 0.2)};
    CHECK_THROWS_WITH_AS(synthesize_pas(recs, Plane::aoa, 1.0),
                         doctest::Contains("duplicate records for azimuth bin 10"),
                         std::invalid_argument);
}

TEST_CASE("mixed link ids or frequencies are rejected") {
    auto a = dwell_mw(0.0, 0.1);
    auto b = dwell_mw(10.0, 0.1);
    b.link_id = "other";
    CHECK_THROWS_AS(synthesize_pas(std::vector{a, b}, Plane::aoa, 1.0),
                    std::invalid_argument);
    auto c = dwell_mw(10.0, 0.1);
    c.frequency_ghz = 16.95;
    CHECK_THROWS_AS(synthesize_pas(std::vector{a, c}, Plane::aoa, 1.0),
                    std::invalid_argument);
}

TEST_CASE("elevation cuts are keyed by plane zenith and sorted") {
    const std::vector<DirectionalRecord> recs{dwell_mw(0.0, 0.1, 100.0),
                                              dwell_mw(10.0, 0.2, 80.0),
                                              dwell_mw(20.0, 0.3, 90.0)};
    const auto pas = synthesize_pas(recs, Plane::aoa, 1.0);
    REQUIRE(pas.cuts.size() == 3);
    CHECK(pas.cuts[0].zenith_deg == 80.0);
    CHECK(pas.cuts[1].zenith_deg == 90.0);
    CHECK(pas.cuts[2].zenith_deg == 100.0);
    CHECK(pas.cuts[1].state[20] == BinState::measured);
}

TEST_CASE("an all-below-noise record set cannot be synthesized") {
    const std::vector<DirectionalRecord> recs{dwell_below_noise(0.0),
                                              dwell_below_noise(10.0)};
    CHECK_THROWS_AS(synthesize_pas(recs, Plane::aoa, 1.0), std::invalid_argument);
}

TEST_CASE("total_omni_power sums measured bins only") {
    const auto one = synthesize_pas(std::vector{dwell_mw(0.0, 1.0)}, Plane::aoa, 1.0);
    CHECK(total_omni_power(std::vector{one}) == doctest::Approx(1.0).epsilon(1e-12));

    const auto three = synthesize_pas(
        std::vector{dwell_mw(0.0, 0.1), dwell_mw(30.0, 0.2), dwell_mw(60.0, 0.3)},
        Plane::aoa, 1.0);
    // Interpolated bins between the measurements do not contribute.
    CHECK(total_omni_power(std::vector{three}) == doctest::Approx(0.6).epsilon(1e-12));

    const auto cut_a = synthesize_pas(std::vector{dwell_mw(0.0, 0.5, 85.0)}, Plane::aoa, 1.0);
    const auto cut_b = synthesize_pas(std::vector{dwell_mw(40.0, 0.5, 95.0)}, Plane::aoa, 1.0);
    CHECK(total_omni_power(std::vector{cut_a, cut_b}) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(total_omni_power({}), std::invalid_argument);
    const auto below = synthesize_pas(
        std::vector{dwell_mw(0.0, 1.0), dwell_below_noise(50.0)}, Plane::aoa, 1.0);
    auto only_below = below;
    only_below.cuts.front().state[0] = BinState::below_noise;
    CHECK_THROWS_AS(total_omni_power(std::vector{only_below}), std::invalid_argument);
}

} // TEST_SUITE("pas")
