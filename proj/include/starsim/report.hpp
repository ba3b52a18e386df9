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

/// \file report.hpp
/// \brief Model-to-code traceability report.
///
/// Every numbered result of docs/model.md that this library implements has
/// exactly one registry entry naming the implementing operation; the report
/// renders the registry as a table joined with the latest validation run,
/// so a reader can see per equation what guards it and whether the guard
/// passed.  Generation fails loudly when an implemented equation has no
/// validation result (or a result has no registry entry) — coverage cannot
/// silently shrink.  A dedicated section documents where the literally
/// transcribed combined-noise variant and the squared-magnitude correction
/// disagree by more than 2x.

#include "starsim/validation.hpp"

#include <string>
#include <vector>

namespace starsim
{
    /// One row of the traceability registry.
    struct trace_entry
    {
        std::string id;        ///< docs/model.md equation id
        std::string anchor;    ///< where the statement lives in this repo
        std::string statement; ///< one-line summary of the result
        std::string operation; ///< implementing function
    };

    /// The full registry, ordered by equation id. One entry per implemented
    /// numbered result of docs/model.md.
    const std::vector<trace_entry> &trace_registry();

    /// Renders the markdown report for a validation run. Throws
    /// std::runtime_error naming the orphan when a registry entry has no
    /// validation result or vice versa.
    std::string generate_report(const validation_results &results);
}
