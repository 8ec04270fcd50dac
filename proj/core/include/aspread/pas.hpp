// SPDX-License-Identifier: Apache-2.0
//
// aspread — angular-spread statistics engine for directional channel measurements
// Copyright (C) 2026 aspread contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aspread/model.hpp"

namespace aspread {

// Per-bin provenance of a PAS sample.
//   absent       — the sounder never dwelled here and no interpolation applies
//   below_noise  — a dwell happened but measured below the noise floor; the
//                  bin carries no power and terminates interpolation arcs
//                  (energy absence is an observation, not a gap)
//   measured     — gain-removed power from exactly one source record
//   interpolated — linear-domain (mW) interpolation between the two
//                  circularly-adjacent measured bins enclosing this bin
enum class BinState : std::uint8_t { absent, below_noise, measured, interpolated };

// One elevation cut of a PAS: a full azimuth circle of bins at a fixed
// zenith. power_mw[i] is meaningful only for measured/interpolated states.
struct ElevationCut {
    double zenith_deg = 90.0;
    std::vector<double> power_mw;
    std::vector<BinState> state;
};

// Gain-removed, azimuth-gridded power angular spectrum for one link and one
// plane (AOA or AOD), one grid per elevation cut. Bin i covers azimuth
// i * resolution_deg; grid length x resolution always equals 360.
struct PowerAngularSpectrum {
    std::string link_id;
    Plane plane = Plane::aoa;
    double resolution_deg = 1.0;
    std::vector<ElevationCut> cuts;  // sorted by zenith_deg ascending

    std::size_t n_bins() const { return cuts.empty() ? 0 : cuts.front().power_mw.size(); }
    double bin_angle_deg(std::size_t i) const { return static_cast<double>(i) * resolution_deg; }
};

// Grid-bin index an azimuth snaps to (nearest bin, circular). Shared by
// synthesis and by callers that pre-reduce duplicate pointings, so both use
// one snapping policy.
std::size_t pas_bin_index(double azimuth_deg, double resolution_deg, std::size_t n_bins);

// Removes the boresight antenna gain of the synthesis plane from a record's
// power (AOA -> RX gain, AOD -> TX gain), zeroing the removed gain field in
// the output. A below-noise record passes through still flagged below-noise.
DirectionalRecord remove_antenna_gain(const DirectionalRecord& record, Plane plane);

// Removes both gains (omnidirectional power bookkeeping).
DirectionalRecord remove_antenna_gain(const DirectionalRecord& record);

// Builds the PAS for one link and one plane from directional records:
//   - records are grouped into elevation cuts by their exact plane zenith
//   - each record's plane azimuth snaps to the nearest grid bin (collision of
//     two records on one bin of one cut is an error: ambiguous duplicates)
//   - antenna gain of the synthesis plane is removed (see above)
//   - every bin strictly between two circularly-adjacent measured bins gets
//     the linear-domain interpolation of their powers; below-noise dwells
//     terminate arcs, and a cut with a single measured bin keeps all other
//     bins absent
// Requires a non-empty record set sharing link_id and frequency, with at
// least one present-power record. 360 must be an integer multiple of
// resolution_deg. Throws std::invalid_argument on violations.
PowerAngularSpectrum synthesize_pas(std::span<const DirectionalRecord> records, Plane plane,
                                    double resolution_deg = 1.0);

// Sum of all measured (not interpolated) bin powers across all cuts and all
// spectra, in mW. Interpolated bins are excluded so power the aperture
// already integrated is not double-counted. Throws std::invalid_argument if
// the set is empty or contains no measured bin.
double total_omni_power(std::span<const PowerAngularSpectrum> pas_set);

} // namespace aspread
