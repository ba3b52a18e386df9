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

#include "starsim/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace starsim
{
    void scenario::validate() const
    {
        if (m_elements < 1)
            throw std::invalid_argument("scenario: m_elements must be >= 1");
        if (!(element_noise_power >= 0.0) || !std::isfinite(element_noise_power))
            throw std::invalid_argument("scenario: element_noise_power must be finite and >= 0");
        if (!(user_noise_power_a > 0.0))
            throw std::invalid_argument("scenario: user_noise_power_a must be > 0");
        if (!(user_noise_power_b > 0.0))
            throw std::invalid_argument("scenario: user_noise_power_b must be > 0");
        if (!(transmit_power > 0.0))
            throw std::invalid_argument("scenario: transmit_power must be > 0");
        if (const auto *c = std::get_if<coupled_config>(&element))
            if (c->amp_port != 2 && c->amp_port != 3)
                throw std::invalid_argument("scenario: element.amp_port must be 2 or 3");
    }

    double side_amplitude(const element_config &config, user u)
    {
        if (std::holds_alternative<passive_config>(config))
            return 1.0 / std::sqrt(2.0);
        if (const auto *c = std::get_if<coupled_config>(&config))
        {
            (void)u; // both sides carry |G|/2
            return c->gain.amplitude / 2.0;
        }
        const auto &ic = std::get<independent_config>(config);
        const cdouble v2 = ic.g2.value();
        const cdouble v3 = ic.g3.value();
        return u == user::a ? std::abs(v3 - v2) / 2.0 : std::abs(v2 + v3) / 2.0;
    }

    tr_matrix element_matrix(const element_config &config)
    {
        if (const auto *c = std::get_if<coupled_config>(&config))
            return coupled_coefficients(c->gain, c->amp_port);
        if (const auto *ic = std::get_if<independent_config>(&config))
            return independent_coefficients(ic->g2, ic->g3);
        const double s = 1.0 / std::sqrt(2.0);
        const cdouble j(0.0, 1.0);
        return tr_matrix{s, s, j * s, j * s};
    }

    const char *to_string(user u)
    {
        return u == user::a ? "a" : "b";
    }
}
