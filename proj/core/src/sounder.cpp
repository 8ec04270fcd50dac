// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#include "aspread/sounder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "aspread/angles.hpp"

namespace aspread {

namespace {

void validate_antenna(const AntennaModel& m, const char* which) {
    if (!std::isfinite(m.boresight_gain_dbi))
        throw std::invalid_argument(std::string(which) + " antenna: gain must be finite");
    if (!std::isfinite(m.hpbw_az_deg) || m.hpbw_az_deg <= 0.0 || m.hpbw_az_deg > 360.0)
        throw std::invalid_argument(std::string(which) +
                                    " antenna: hpbw_az must be in (0, 360]");
    if (!std::isfinite(m.hpbw_el_deg) || m.hpbw_el_deg <= 0.0 || m.hpbw_el_deg > 180.0)
        throw std::invalid_argument(std::string(which) +
                                    " antenna: hpbw_el must be in (0, 180]");
    if (!std::isfinite(m.sidelobe_floor_db) || m.sidelobe_floor_db <= 0.0)
        throw std::invalid_argument(std::string(which) +
                                    " antenna: sidelobe_floor_db must be > 0");
}

double snapped_step(double step_deg, const char* what) {
    if (!std::isfinite(step_deg) || step_deg <= 0.0 || step_deg > 360.0)
        throw std::invalid_argument(std::string("run_procedure: ") + what +
                                    " must be in (0, 360]");
    const auto n = static_cast<std::size_t>(std::llround(360.0 / step_deg));
    return 360.0 / static_cast<double>(std::max<std::size_t>(n, 1));
}

// Full-circle azimuth grid anchored at anchor_deg, ascending after wrapping.
std::vector<double> azimuth_grid(double anchor_deg, double step_deg) {
    const double step = snapped_step(step_deg, "azimuth step");
    const auto n = static_cast<std::size_t>(std::llround(360.0 / step));
    std::vector<double> grid;
    grid.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        grid.push_back(wrap_azimuth(anchor_deg + static_cast<double>(i) * step));
    std::sort(grid.begin(), grid.end());
    return grid;
}

// Zenith grid anchored at the level pointing (90°), covering [0, 180].
std::vector<double> zenith_grid(double step_deg) {
    if (!std::isfinite(step_deg) || step_deg <= 0.0 || step_deg > 180.0)
        throw std::invalid_argument("run_procedure: elevation step must be in (0, 180]");
    std::vector<double> grid;
    for (double z = 90.0; z >= 0.0; z -= step_deg)
        grid.push_back(z);
    for (double z = 90.0 + step_deg; z <= 180.0; z += step_deg)
        grid.push_back(z);
    std::sort(grid.begin(), grid.end());
    return grid;
}

// Symmetric window [center - half, center + half] at fine steps, clamped to
// the zenith range when clamp180 is set, wrapped otherwise.
std::vector<double> refine_window(double center, double half, double fine, bool clamp180) {
    const auto k = static_cast<long long>(std::llround(half / fine));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(2 * k + 1));
    for (long long i = -k; i <= k; ++i) {
        double v = center + static_cast<double>(i) * fine;
        if (clamp180)
            v = std::clamp(v, 0.0, 180.0);
        else
            v = wrap_azimuth(v);
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct BestDwell {
    double power_dbm = -std::numeric_limits<double>::infinity();
    Direction tx{0.0, 90.0};
    Direction rx{0.0, 90.0};
    bool found = false;
};

void consider(BestDwell& best, const DirectionalRecord& rec) {
    if (!rec.power_dbm)
        return;
    if (!best.found || *rec.power_dbm > best.power_dbm) {
        best.found = true;
        best.power_dbm = *rec.power_dbm;
        best.tx = Direction{rec.tx_az_deg, rec.tx_el_deg};
        best.rx = Direction{rec.rx_az_deg, rec.rx_el_deg};
    }
}

auto record_key(const DirectionalRecord& r) {
    return std::tie(r.tx_el_deg, r.tx_az_deg, r.rx_el_deg, r.rx_az_deg);
}

void canonical_sort(std::vector<DirectionalRecord>& recs) {
    std::sort(recs.begin(), recs.end(), [](const DirectionalRecord& a,
                                           const DirectionalRecord& b) {
        return record_key(a) < record_key(b);
    });
}

} // namespace

double antenna_gain_db(double offset_az_deg, double offset_el_deg, const AntennaModel& model) {
    validate_antenna(model, "antenna_gain_db");
    if (!std::isfinite(offset_az_deg) || !std::isfinite(offset_el_deg))
        throw std::invalid_argument("antenna_gain_db: offsets must be finite");
    const double az = offset_az_deg / model.hpbw_az_deg;
    const double el = offset_el_deg / model.hpbw_el_deg;
    const double rolloff = 12.0 * (az * az + el * el);
    return model.boresight_gain_dbi - std::min(rolloff, model.sidelobe_floor_db);
}

DirectionalRecord measure_direction(const SyntheticEnvironment& env, Direction tx_dir,
                                    Direction rx_dir, const AntennaModel& tx_ant,
                                    const AntennaModel& rx_ant) {
    validate_antenna(tx_ant, "TX");
    validate_antenna(rx_ant, "RX");
    if (!std::isfinite(env.noise_floor_dbm))
        throw std::invalid_argument("measure_direction: noise floor must be finite");
    tx_dir = Direction::make(tx_dir.azimuth_deg, tx_dir.zenith_deg);
    rx_dir = Direction::make(rx_dir.azimuth_deg, rx_dir.zenith_deg);

    double sum_mw = 0.0;
    for (const Subpath& sp : env.truth_subpaths) {
        const double tx_gain = antenna_gain_db(
            circular_distance(sp.departure.azimuth_deg, tx_dir.azimuth_deg),
            sp.departure.zenith_deg - tx_dir.zenith_deg, tx_ant);
        const double rx_gain = antenna_gain_db(
            circular_distance(sp.arrival.azimuth_deg, rx_dir.azimuth_deg),
            sp.arrival.zenith_deg - rx_dir.zenith_deg, rx_ant);
        sum_mw += sp.power_linear() * db_to_linear(tx_gain) * db_to_linear(rx_gain);
    }

    std::optional<double> power_dbm;
    if (sum_mw > 0.0) {
        const double dbm = linear_to_db(sum_mw);
        if (dbm > env.noise_floor_dbm)
            power_dbm = dbm;
    }
    return DirectionalRecord::make(env.link_id, env.frequency_ghz, env.condition,
                                   tx_dir.azimuth_deg, tx_dir.zenith_deg, rx_dir.azimuth_deg,
                                   rx_dir.zenith_deg, power_dbm, tx_ant.boresight_gain_dbi,
                                   rx_ant.boresight_gain_dbi);
}

ProcedureResult run_procedure(const SyntheticEnvironment& env, const SweepConfig& config,
                              const AntennaModel& tx_ant, const AntennaModel& rx_ant) {
    validate_antenna(tx_ant, "TX");
    validate_antenna(rx_ant, "RX");
    if (!std::isfinite(config.search_step_deg) || config.search_step_deg <= 0.0)
        throw std::invalid_argument("run_procedure: search_step_deg must be > 0");
    if (config.rx_elevation_cuts != 1 && config.rx_elevation_cuts != 3)
        throw std::invalid_argument("run_procedure: rx_elevation_cuts must be 1 or 3");
    if (config.tx_tilt_steps != 1 && config.tx_tilt_steps != 2)
        throw std::invalid_argument("run_procedure: tx_tilt_steps must be 1 or 2");
    if (!std::isfinite(config.aod_margin_db) || config.aod_margin_db <= 0.0)
        throw std::invalid_argument("run_procedure: aod_margin_db must be > 0");

    const double coarse_az =
        config.coarse_step_az_deg > 0.0 ? config.coarse_step_az_deg : rx_ant.hpbw_az_deg;
    const double coarse_el =
        config.coarse_step_el_deg > 0.0 ? config.coarse_step_el_deg : rx_ant.hpbw_el_deg;
    const double fine = config.search_step_deg;

    ProcedureResult result;
    std::vector<DirectionalRecord> search;
    BestDwell best;

    auto dwell = [&](Direction tx, Direction rx) {
        DirectionalRecord rec = measure_direction(env, tx, rx, tx_ant, rx_ant);
        consider(best, rec);
        search.push_back(std::move(rec));
    };

    // Phase 1a: coarse joint azimuth scan at level pointing.
    const std::vector<double> az_coarse_tx = azimuth_grid(0.0, coarse_az);
    const std::vector<double> az_coarse_rx = azimuth_grid(0.0, coarse_az);
    for (double ta : az_coarse_tx)
        for (double ra : az_coarse_rx)
            dwell(Direction{ta, 90.0}, Direction{ra, 90.0});

    // Phase 1b: coarse joint elevation scan at the best azimuths so far.
    const std::vector<double> el_coarse = zenith_grid(coarse_el);
    const Direction az_anchor_tx = best.tx;
    const Direction az_anchor_rx = best.rx;
    for (double te : el_coarse)
        for (double re : el_coarse)
            dwell(Direction{az_anchor_tx.azimuth_deg, te},
                  Direction{az_anchor_rx.azimuth_deg, re});

    // Phase 1c: fine joint azimuth refinement around the coarse optimum.
    {
        const Direction tx0 = best.tx;
        const Direction rx0 = best.rx;
        const auto tx_win = refine_window(tx0.azimuth_deg, coarse_az, fine, false);
        const auto rx_win = refine_window(rx0.azimuth_deg, coarse_az, fine, false);
        for (double ta : tx_win)
            for (double ra : rx_win)
                dwell(Direction{ta, tx0.zenith_deg}, Direction{ra, rx0.zenith_deg});
    }

    // Phase 1d: fine joint elevation refinement.
    {
        const Direction tx0 = best.tx;
        const Direction rx0 = best.rx;
        const auto tx_win = refine_window(tx0.zenith_deg, coarse_el, fine, true);
        const auto rx_win = refine_window(rx0.zenith_deg, coarse_el, fine, true);
        for (double te : tx_win)
            for (double re : rx_win)
                dwell(Direction{tx0.azimuth_deg, te}, Direction{rx0.azimuth_deg, re});
    }

    result.tx_best = best.tx;
    result.rx_best = best.rx;

    // Phase 2: rapid TX azimuth (AOD) scan at the best RX pointing, in TX
    // HPBW steps anchored at the strongest TX azimuth.
    const std::vector<double> aod_grid = azimuth_grid(result.tx_best.azimuth_deg,
                                                      tx_ant.hpbw_az_deg);
    std::vector<std::pair<double, std::optional<double>>> aod_power;
    double strongest_aod_dbm = -std::numeric_limits<double>::infinity();
    bool any_aod = false;
    for (double ta : aod_grid) {
        DirectionalRecord rec = measure_direction(
            env, Direction{ta, result.tx_best.zenith_deg}, result.rx_best, tx_ant, rx_ant);
        aod_power.emplace_back(ta, rec.power_dbm);
        if (rec.power_dbm) {
            any_aod = true;
            strongest_aod_dbm = std::max(strongest_aod_dbm, *rec.power_dbm);
        }
        search.push_back(std::move(rec));
    }
    if (any_aod) {
        for (const auto& [ta, p] : aod_power)
            if (p && *p >= strongest_aod_dbm - config.aod_margin_db)
                result.selected_aod_deg.push_back(ta);
    } else {
        // Nothing above the noise floor anywhere: sweep the strongest-search
        // pointing anyway so the procedure still emits its systematic block.
        result.selected_aod_deg.push_back(result.tx_best.azimuth_deg);
    }

    // Search block: canonical order, exact duplicate pointings collapsed
    // (phases revisit their anchors; repeated dwells are identical by
    // determinism).
    canonical_sort(search);
    search.erase(std::unique(search.begin(), search.end(),
                             [](const DirectionalRecord& a, const DirectionalRecord& b) {
                                 return record_key(a) == record_key(b);
                             }),
                 search.end());

    // Phase 3: systematic sweeps — AODs x TX tilts x RX elevation cuts x RX
    // azimuth circle in HPBW steps.
    std::vector<double> tx_tilts{result.tx_best.zenith_deg};
    if (config.tx_tilt_steps == 2)
        tx_tilts.push_back(std::clamp(result.tx_best.zenith_deg + tx_ant.hpbw_el_deg, 0.0,
                                      180.0));
    std::vector<double> rx_cuts{result.rx_best.zenith_deg};
    if (config.rx_elevation_cuts == 3) {
        rx_cuts.push_back(std::clamp(result.rx_best.zenith_deg - rx_ant.hpbw_el_deg, 0.0,
                                     180.0));
        rx_cuts.push_back(std::clamp(result.rx_best.zenith_deg + rx_ant.hpbw_el_deg, 0.0,
                                     180.0));
    }
    for (auto* v : {&tx_tilts, &rx_cuts}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }

    const double rx_step =
        config.rx_sweep_step_deg > 0.0 ? config.rx_sweep_step_deg : rx_ant.hpbw_az_deg;
    const std::vector<double> rx_grid = azimuth_grid(result.rx_best.azimuth_deg, rx_step);
    result.rx_step_effective_deg = snapped_step(rx_step, "rx sweep step");
    result.n_rx_sweep_steps = rx_grid.size();

    std::vector<DirectionalRecord> sweeps;
    sweeps.reserve(result.selected_aod_deg.size() * tx_tilts.size() * rx_cuts.size() *
                   rx_grid.size());
    for (double aod : result.selected_aod_deg)
        for (double tilt : tx_tilts)
            for (double cut : rx_cuts)
                for (double ra : rx_grid)
                    sweeps.push_back(measure_direction(env, Direction{aod, tilt},
                                                       Direction{ra, cut}, tx_ant, rx_ant));
    canonical_sort(sweeps);

    result.n_search_records = search.size();
    result.records = std::move(search);
    result.records.insert(result.records.end(), std::make_move_iterator(sweeps.begin()),
                          std::make_move_iterator(sweeps.end()));
    return result;
}

} // namespace aspread
