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

#include "starsim/link.hpp"

#include <cmath>
#include <stdexcept>

namespace starsim
{
    channel_draw draw_channels(const scenario &sc, random_stream &rng)
    {
        channel_draw d;
        draw_channels(sc, rng, d);
        return d;
    }

    void draw_channels(const scenario &sc, random_stream &rng, channel_draw &out)
    {
        out.g.resize(sc.m_elements);
        out.h_a.resize(sc.m_elements);
        out.h_b.resize(sc.m_elements);
        for (auto &v : out.g)
            v = sample_rician(sc.bs_link, rng);
        for (auto &v : out.h_a)
            v = sample_rician(sc.user_a_link, rng);
        for (auto &v : out.h_b)
            v = sample_rician(sc.user_b_link, rng);
    }

    phase_set cophase_phases(const channel_draw &draw, const scenario &sc, align_target target)
    {
        phase_set p;
        cophase_phases(draw, sc, target, p);
        return p;
    }

    void cophase_phases(const channel_draw &draw, const scenario &sc, align_target target,
                        phase_set &out)
    {
        const std::size_t m = sc.m_elements;
        if (draw.g.size() != m || draw.h_a.size() != m || draw.h_b.size() != m)
            throw std::invalid_argument("cophase_phases: draw length mismatch");

        const bool coupled = std::holds_alternative<coupled_config>(sc.element);
        if (coupled && target == align_target::both)
            throw std::invalid_argument("cophase_phases: coupled hardware cannot align both "
                                        "users (transmission phase is slaved to reflection)");

        // Side-B coefficient leads side A by -pi/2 when the amplifier sits on
        // port 2 (arg(j*g/2) - arg(-g/2) = -pi/2) and by +pi/2 on port 3.
        double b_minus_a = 0.0;
        if (coupled)
            b_minus_a = std::get<coupled_config>(sc.element).amp_port == 2 ? -M_PI_2 : M_PI_2;

        out.phi_a.resize(m);
        out.phi_b.resize(m);
        for (std::size_t i = 0; i < m; ++i)
        {
            double pa = 0.0, pb = 0.0;
            if (target == align_target::user_a || target == align_target::both)
                pa = -std::arg(draw.h_a[i] * draw.g[i]);
            if (target == align_target::user_b || target == align_target::both)
                pb = -std::arg(draw.h_b[i] * draw.g[i]);
            if (coupled)
            {
                if (target == align_target::user_a)
                    pb = pa + b_minus_a;
                else
                    pa = pb - b_minus_a;
            }
            out.phi_a[i] = pa;
            out.phi_b[i] = pb;
        }
    }

    namespace
    {
        // Cascade sum S = sum h*A*e^{j phi}*g and bare sum Q = sum h*A*e^{j phi}.
        struct cascade_sums
        {
            std::complex<double> signal; // S
            std::complex<double> noise;  // Q
        };

        cascade_sums sums_for_user(const channel_draw &draw, const phase_set &phases,
                                   const scenario &sc, user u)
        {
            const auto &h = u == user::a ? draw.h_a : draw.h_b;
            const auto &phi = u == user::a ? phases.phi_a : phases.phi_b;
            if (h.size() != sc.m_elements || phi.size() != sc.m_elements ||
                draw.g.size() != sc.m_elements)
                throw std::invalid_argument("link: vector length mismatch");
            const double amp = side_amplitude(sc.element, u);
            cascade_sums s{{0.0, 0.0}, {0.0, 0.0}};
            for (std::size_t i = 0; i < sc.m_elements; ++i)
            {
                const std::complex<double> coeff = std::polar(amp, phi[i]) * h[i];
                s.signal += coeff * draw.g[i];
                s.noise += coeff;
            }
            return s;
        }
    }

    double received_snr(const channel_draw &draw, const phase_set &phases,
                        const scenario &sc, user u)
    {
        const cascade_sums s = sums_for_user(draw, phases, sc, u);
        const double user_noise = u == user::a ? sc.user_noise_power_a : sc.user_noise_power_b;
        const double num = sc.transmit_power * std::norm(s.signal);
        const double den = std::norm(s.noise) * sc.element_noise_power + user_noise;
        return num / den;
    }

    std::complex<double> received_signal(const channel_draw &draw, const phase_set &phases,
                                         const scenario &sc, user u,
                                         std::complex<double> symbol, random_stream &rng)
    {
        const auto &h = u == user::a ? draw.h_a : draw.h_b;
        const auto &phi = u == user::a ? phases.phi_a : phases.phi_b;
        const double amp = side_amplitude(sc.element, u);
        const double user_noise = u == user::a ? sc.user_noise_power_a : sc.user_noise_power_b;
        const std::complex<double> s = std::sqrt(sc.transmit_power) * symbol;

        std::complex<double> y(0.0, 0.0);
        for (std::size_t i = 0; i < sc.m_elements; ++i)
        {
            // Element noise is injected before the element response and rides
            // through the same coefficient as the signal.
            std::complex<double> v(0.0, 0.0);
            if (sc.element_noise_power > 0.0)
                v = rng.circular_gaussian(sc.element_noise_power);
            y += std::polar(amp, phi[i]) * h[i] * (draw.g[i] * s + v);
        }
        if (user_noise > 0.0)
            y += rng.circular_gaussian(user_noise);
        return y;
    }
}
