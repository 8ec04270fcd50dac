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
#include <string>
#include <vector>

#include "aspread/model.hpp"

namespace aspread {

// Ground-truth multipath environment for the sounder digital twin. An empty
// subpath list is valid (every dwell then measures below the noise floor).
struct SyntheticEnvironment {
    std::string link_id = "sim0";
    double frequency_ghz = 6.75;
    Condition condition = Condition::los;
    double noise_floor_dbm = -100.0;  // finite; not stated by the hardware class docs, configurable
    std::vector<Subpath> truth_subpaths;
};

// Gaussian-mainlobe horn model: gain(off_az, off_el) = boresight -
// 12*((off_az/hpbw_az)^2 + (off_el/hpbw_el)^2) dB, clamped at boresight -
// sidelobe_floor_db. The 12*(theta/HPBW)^2 form makes a half-HPBW offset lose
// exactly 3 dB, the defining property of the half-power beamwidth.
struct AntennaModel {
    double boresight_gain_dbi = 0.0;
    double hpbw_az_deg = 0.0;        // > 0, <= 360
    double hpbw_el_deg = 0.0;        // > 0, <= 180
    double sidelobe_floor_db = 30.0; // > 0, dB below boresight
};

// Sweep-procedure knobs. Azimuth step counts are snapped so steps divide 360
// evenly: n = round(360/step), effective step = 360/n.
struct SweepConfig {
    double search_step_deg = 1.0;   // fine search resolution (gimbal step)
    double rx_sweep_step_deg = 0.0; // 0 = use RX hpbw_az
    double coarse_step_az_deg = 0.0;// 0 = use hpbw_az; joint coarse search step
    double coarse_step_el_deg = 0.0;// 0 = use hpbw_el
    int rx_elevation_cuts = 3;      // 1 or 3: boresight cut, or boresight and +/- hpbw_el
    int tx_tilt_steps = 2;          // 1 or 2: level only, or level + one HPBW downtilt
    double aod_margin_db = 20.0;    // rapid-scan significance margin below strongest AOD
};

// Output of one full measurement procedure. records = [search dwells | sweep
// dwells], each block canonically sorted by (tx_el, tx_az, rx_el, rx_az);
// n_search_records marks the boundary. The sweep block is the systematic
// dataset statistics are computed from; search dwells are instrumentation.
struct ProcedureResult {
    std::vector<DirectionalRecord> records;
    std::size_t n_search_records = 0;
    Direction tx_best{0.0, 90.0};   // strongest pointing found by the search
    Direction rx_best{0.0, 90.0};
    std::vector<double> selected_aod_deg;  // significant TX azimuths, ascending
    double rx_step_effective_deg = 0.0;
    std::size_t n_rx_sweep_steps = 0;

    std::span<const DirectionalRecord> search_records() const {
        return {records.data(), n_search_records};
    }
    std::span<const DirectionalRecord> sweep_records() const {
        return {records.data() + n_search_records, records.size() - n_search_records};
    }
};

// Antenna gain at an angular offset from boresight, in dBi (absolute, i.e.
// including the boresight gain). Model must satisfy the AntennaModel
// invariants; throws std::invalid_argument otherwise.
double antenna_gain_db(double offset_az_deg, double offset_el_deg, const AntennaModel& model);

// One dwell: non-coherent sum over truth subpaths of subpath power times both
// antenna gains at the pointing offsets (azimuth offsets via
// circular_distance, zenith offsets via plain difference). A sum at or below
// the noise floor yields a below-noise record. Gains recorded are the
// boresight gains — the quantities later removed during PAS synthesis.
DirectionalRecord measure_direction(const SyntheticEnvironment& env, Direction tx_dir,
                                    Direction rx_dir, const AntennaModel& tx_ant,
                                    const AntennaModel& rx_ant);

// Full measurement procedure:
//   1. strongest-direction search — HPBW-coarse joint azimuth scan, coarse
//      joint elevation scan, then fine refinement at search_step_deg (1° by
//      default) in azimuth and elevation;
//   2. rapid TX AOD scan at RX-best pointing; significant AODs are those
//      within aod_margin_db of the strongest present dwell;
//   3. systematic sweeps: for each significant AOD x TX tilt x RX elevation
//      cut, the RX azimuth is swept 360° in HPBW steps.
// The search runs once and its result is reused for the down-tilted TX
// sweeps. Deterministic given env and config; an empty environment yields
// all-below-noise records (no error).
ProcedureResult run_procedure(const SyntheticEnvironment& env, const SweepConfig& config,
                              const AntennaModel& tx_ant, const AntennaModel& rx_ant);

} // namespace aspread
