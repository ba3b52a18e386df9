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

#ifndef starsim_scenario_H
#define starsim_scenario_H

#include <cstddef>
#include <variant>

#include "starsim/element.hpp"
#include "starsim/fading.hpp"

namespace starsim
{
    enum class user
    {
        a, // reflection side
        b  // transmission side
    };

    // Surface configurations, applied uniformly to all M elements.
    struct coupled_config // single amplifier behind the hybrid
    {
        complex_gain gain;
        int amp_port = 2; // 2 or 3; selects which side leads by +pi/2
    };

    struct independent_config // two amplifiers, T and R separately tunable
    {
        complex_gain g2;
        complex_gain g3;
    };

    struct passive_config // lossless baseline, equal power split |R|=|T|=1/sqrt(2)
    {
    };

    using element_config = std::variant<coupled_config, independent_config, passive_config>;

    // Full two-user downlink description. Channel parameters are per-link
    // Rician marginals; element gains are identical across the surface.
    struct scenario
    {
        std::size_t m_elements = 1;            // M >= 1
        element_config element;                // uniform element setting
        rician_params bs_link;                 // BS -> element, g_m
        rician_params user_a_link;             // element -> user A, h^A_m
        rician_params user_b_link;             // element -> user B, h^B_m
        double element_noise_power = 0.0;      // sigma_v^2 [W], >= 0
        double user_noise_power_a = 1.0;       // sigma_A^2 [W], > 0
        double user_noise_power_b = 1.0;       // sigma_B^2 [W], > 0
        double transmit_power = 1.0;           // p [W], > 0

        // Throws std::invalid_argument naming the first violated field.
        void validate() const;
    };

    // Per-element coefficient magnitude seen by one user: coupled |G|/2 on
    // both sides, independent |g3-g2|/2 toward A and |g2+g3|/2 toward B,
    // passive 1/sqrt(2).
    double side_amplitude(const element_config &config, user u);

    // Element T&R matrix realized by a configuration (passive uses the
    // canonical unitary split (1/sqrt(2))*[[1, j],[j, 1]]).
    tr_matrix element_matrix(const element_config &config);

    const char *to_string(user u);
}

#endif
