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

/// \file validation.hpp
/// \brief The fast invariant suite behind `starsim validate` and the
///        traceability report.
///
/// Each check re-derives one numbered result of docs/model.md through an
/// independent path (the network solve, a deliberately duplicated formula
/// transcription, a small Monte Carlo run, or a structural property) and
/// records the worst observed deviation against a pinned tolerance.  The
/// suite is deterministic for a fixed seed and runs in seconds; the heavy
/// statistical gates live in the acceptance tests, not here.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace starsim
{
    /// Outcome of one invariant check, keyed by the equation id it guards.
    struct check_result
    {
        std::string id;        ///< docs/model.md equation id: "1".."24", "A.1", "A.2"
        std::string operation; ///< implementing function under test
        std::string kind;      ///< how it was checked (oracle, property, MC, ...)
        bool passed = false;
        double measured = 0.0;  ///< worst deviation or decisive statistic
        double tolerance = 0.0; ///< pinned bound the measurement must satisfy
        std::string detail;     ///< one-line human summary
    };

    /// One comparison point between the corrected and the literally
    /// transcribed combined-noise outage asymptote (see docs/model.md,
    /// Eq. (20) discussion).
    struct discrepancy_point
    {
        double p_watts = 0.0;
        std::size_t m_elements = 0;
        double corrected = 0.0; ///< squared-magnitude noise variance variant
        double literal = 0.0;   ///< unsquared (as-printed) variant
        double ratio = 0.0;     ///< literal / corrected
    };

    struct validation_results
    {
        std::vector<check_result> checks;
        std::vector<discrepancy_point> discrepancies;

        bool all_passed() const;
    };

    /// Runs every invariant check. Deterministic for a fixed seed.
    validation_results run_validation_suite(std::uint64_t seed = 1);
}
