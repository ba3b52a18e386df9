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

#ifndef starsim_link_H
#define starsim_link_H

#include <complex>
#include <vector>

#include "starsim/rng.hpp"
#include "starsim/scenario.hpp"

namespace starsim
{
    // One realization of all small-scale channels.
    struct channel_draw
    {
        std::vector<std::complex<double>> g;   // BS -> element, length M
        std::vector<std::complex<double>> h_a; // element -> user A, length M
        std::vector<std::complex<double>> h_b; // element -> user B, length M
    };

    // Which user's cascade the element phases are aligned to. "both" needs
    // independent (or passive) elements; coupled hardware ties the two sides
    // together with a fixed +/- pi/2 offset.
    enum class align_target
    {
        user_a,
        user_b,
        both
    };

    // Element phase settings: the phase of the side-A and side-B coefficients,
    // i.e. the effective per-element response toward user X is
    // side_amplitude(X) * exp(j*phi_x[m]).
    struct phase_set
    {
        std::vector<double> phi_a;
        std::vector<double> phi_b;
    };

    // Draws g, h_a, h_b (in that order) from the scenario's Rician marginals.
    channel_draw draw_channels(const scenario &sc, random_stream &rng);

    // Allocation-free variants for hot Monte Carlo loops; they resize the
    // output buffers only when M changes.
    void draw_channels(const scenario &sc, random_stream &rng, channel_draw &out);
    void cophase_phases(const channel_draw &draw, const scenario &sc, align_target target,
                        phase_set &out);

    // Phase alignment. For the aligned user X: phi_x[m] = -arg(h_x[m]*g[m]),
    // making every cascade summand a nonnegative real. Coupled config: the
    // other side is offset by the hardware-forced -pi/2 (amp on port 2; +pi/2
    // for port 3), which leaves its cascade phases uniformly random. Unaligned
    // independent/passive side keeps phase 0. Throws std::invalid_argument
    // for align_target::both under a coupled config or on length mismatch.
    phase_set cophase_phases(const channel_draw &draw, const scenario &sc, align_target target);

    // Instantaneous received SNR of user u:
    //   p * |sum_m h_m * A * exp(j*phi_m) * g_m|^2
    //   / (|sum_m h_m * A * exp(j*phi_m)|^2 * sigma_v^2 + sigma_u^2)
    // with A the user's side amplitude.
    double received_snr(const channel_draw &draw, const phase_set &phases,
                        const scenario &sc, user u);

    // One received complex sample for a transmitted symbol of unit average
    // power (scaled internally by sqrt(p)): the cascade-filtered symbol plus
    // element noise passed through the surface plus receiver noise.
    std::complex<double> received_signal(const channel_draw &draw, const phase_set &phases,
                                         const scenario &sc, user u,
                                         std::complex<double> symbol, random_stream &rng);
}

#endif
