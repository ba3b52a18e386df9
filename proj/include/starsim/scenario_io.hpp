// SPDX-License-Identifier: Apache-2.0
//
// starsim - link-level simulator for active STAR-RIS surfaces
// Copyright (C) 2026 starsim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

/// \file scenario_io.hpp
/// \brief Scenario configuration files: a small TOML subset, parsed with
///        line-numbered diagnostics and strict unknown-key rejection.
///
/// A configuration file describes one simulation scenario plus the Monte
/// Carlo run parameters.  Every key is optional; missing keys fall back to
/// the documented baseline (324 coupled active elements at 1.5 dB amplifier
/// gain, Rician factor 1.5 dB on every link, 10 m link distances with
/// path-loss exponent 2.2, -10 dBm user noise, -20 dBm element noise; see
/// `default_config`).  Recognised keys:
///
/// ```toml
/// m_elements = 324            # number of surface elements (>= 1)
///
/// [element]
/// kind = "coupled"            # "coupled" | "independent" | "passive"
/// gain_db = 1.5               # coupled: amplifier power gain, dB
/// phase_deg = 0.0             # coupled: reflection phase, degrees
/// amp_port = 2                # coupled: amplifier position, port 2 or 3
/// gain2_db = 1.5              # independent: per-loop gains/phases
/// phase2_deg = 0.0
/// gain3_db = 1.5
/// phase3_deg = 0.0
///
/// [channels.bs]               # likewise channels.user_a, channels.user_b
/// k_db = 1.5                  # Rician K factor, dB
/// distance_m = 10.0           # link distance; omega = distance^-alpha
/// alpha = 2.2                 # path-loss exponent
/// omega = 0.00631             # direct mean-power override (wins over distance)
///
/// [noise]
/// user_dbm = -10.0            # receiver noise for both users, dBm
/// user_a_dbm = -10.0          # per-user overrides
/// user_b_dbm = -10.0
/// element_dbm = -20.0         # per-element amplifier noise, dBm
///
/// [power]
/// transmit_dbm = 30.0
///
/// [mc]
/// trials = 100000
/// seed = 1
/// ```
///
/// Each quantity also has an exact-value spelling in linear units, used by
/// `serialize_config` so that serialize-then-parse reproduces the identical
/// configuration bit for bit (dB and degree conversions are not exactly
/// invertible in floating point).  Setting both spellings of one quantity
/// is an error:
///
///   element.amplitude / element.phase_rad        (vs gain_db / phase_deg)
///   element.amplitude2/3, element.phase2/3_rad   (independent loops)
///   channels.*.k                                 (vs k_db)
///   channels.*.omega                             (vs distance_m + alpha)
///   noise.user_a_w, noise.user_b_w,
///   noise.element_w                              (vs *_dbm; element_w = 0
///                                                 turns element noise off)
///   power.transmit_w                             (vs transmit_dbm)
///
/// Unknown sections or keys are errors, misspelled keys never silently
/// change the physics.  `serialize_config` writes a file that parses back
/// to the same configuration (round trip).

#include "starsim/scenario.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace starsim
{
    /// Parse or validation failure for a configuration file.  The message
    /// includes the 1-based line number when the failure is tied to a line.
    class config_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// A fully resolved simulation configuration: the physical scenario and
    /// the Monte Carlo run parameters that accompany it.
    struct sim_config
    {
        scenario sc;                  ///< physical scenario (validated)
        std::size_t trials = 100000;  ///< Monte Carlo trials
        std::uint64_t seed = 1;       ///< master RNG seed
    };

    /// The baseline configuration used when keys are omitted: 324 coupled
    /// active elements at 1.5 dB gain and zero phase, every link Rician with
    /// K = 1.5 dB and mean power 10^-2.2 (10 m at exponent 2.2), -10 dBm
    /// user noise, -20 dBm element noise, 30 dBm transmit power, 100000
    /// trials with master seed 1.
    sim_config default_config();

    /// Parse a configuration from TOML text.  Throws `config_error` with a
    /// line-numbered message on syntax errors, unknown keys, type mismatches,
    /// or physically invalid values.
    sim_config parse_config(const std::string &text);

    /// Read and parse the file at `path`.  Throws `config_error` if the file
    /// cannot be read, otherwise behaves like `parse_config`.
    sim_config load_config(const std::string &path);

    /// Serialize a configuration to TOML text that `parse_config` accepts
    /// and that resolves to an identical configuration.
    std::string serialize_config(const sim_config &config);
}
