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

/// \file cli.hpp
/// \brief Command-line front end, callable in-process for testing.
///
/// Subcommands: `element` (print T&R coefficients and the energy class),
/// `pattern` (angle/magnitude CSVs for the three surface families),
/// `outage` (transmit-power sweep with Monte Carlo estimates, confidence
/// bounds and analytical overlays), `scaling` (element-count sweep of the
/// mean SNR with overlays) and `validate` (the invariant suite, optionally
/// rendering the traceability report).  Every result file gets a JSON
/// manifest sufficient for bit-identical re-execution via
/// `outage --from-manifest`.
///
/// Exit codes: 0 success, 1 numerical or I/O failure (diagnostic on
/// stderr), 2 usage errors.

#include <string>
#include <vector>

namespace starsim
{
    /// Runs one CLI invocation; `args` are the argv[1:] tokens. Writes to
    /// std::cout/std::cerr and the filesystem; never throws.
    int run_command(const std::vector<std::string> &args);
}
