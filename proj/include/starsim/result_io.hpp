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

/// \file result_io.hpp
/// \brief Result artifacts: sweep CSV files with a stable schema, and JSON
///        run manifests sufficient for bit-identical reproduction.
///
/// CSV schema (stable contract): one header row naming the columns
/// `x,estimate,ci_low,ci_high,analytic_primary,analytic_alt`, then one data
/// row per sweep point.  Numbers use full round-trip precision (17
/// significant digits) in the C locale.  Points whose Monte Carlo estimate
/// is statistically unresolved (fewer than 20 events) write NaN in the
/// `estimate` column while keeping the honest Wilson bounds, so plots break
/// the line instead of showing a misleading point.
///
/// A manifest records the command, the fully resolved configuration (in the
/// exact-value TOML spelling), every command parameter, the master seed and
/// the tool version: re-running from the manifest reproduces the CSV byte
/// for byte.

#include "starsim/mc.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace starsim
{
    /// Full round-trip formatting for doubles (17 significant digits, C
    /// locale); used for every numeric field in result artifacts.
    std::string format_double(double v);

    /// CSV text for a sweep result (header plus one row per point).
    std::string sweep_csv(const sweep_result &result);

    /// Writes `sweep_csv` to `path`; throws std::runtime_error on I/O failure.
    void write_sweep_csv(const std::string &path, const sweep_result &result);

    /// Everything needed to reproduce one result file bit-identically.
    struct run_manifest
    {
        std::string command;                           ///< subcommand name
        std::string config_toml;                       ///< resolved exact config
        std::map<std::string, std::string> parameters; ///< command arguments
        std::uint64_t master_seed = 1;
        std::string version;
        double duration_seconds = 0.0; ///< informational; not reproduced
    };

    /// Pretty-printed JSON for a manifest.
    std::string manifest_json(const run_manifest &manifest);

    /// Writes `manifest_json` to `path`; throws std::runtime_error on I/O
    /// failure.
    void write_manifest(const std::string &path, const run_manifest &manifest);

    /// Parses a manifest written by `write_manifest`. Throws
    /// std::runtime_error on malformed JSON or missing fields.
    run_manifest read_manifest(const std::string &path);
}
