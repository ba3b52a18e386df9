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

#ifndef starsim_element_H
#define starsim_element_H

#include <array>
#include <complex>

namespace starsim
{
    using cdouble = std::complex<double>;

    // Complex amplifier/delay-line response G = amplitude * exp(j*phase).
    // Canonical polar form at API boundaries; phase normalized to [0, 2*pi).
    struct complex_gain
    {
        double amplitude; // linear voltage gain, >= 0
        double phase;     // radians in [0, 2*pi)

        complex_gain(double amplitude_in = 0.0, double phase_in = 0.0);
        static complex_gain from_value(cdouble v);
        cdouble value() const; // amplitude * exp(j*phase)
    };

    // Converts an amplifier power gain in dB to a linear voltage amplitude.
    double amplitude_from_db(double power_db);

    // Port-voltage pair of the 4-port coupler: outgoing = S * incoming.
    struct port_signals
    {
        std::array<cdouble, 4> incoming; // V1+..V4+
        std::array<cdouble, 4> outgoing; // V1-..V4-
    };

    // Effective 2x2 element response between the two wireless sides:
    //   [y_a]   [r_a   t_ab] [s_a]
    //   [y_b] = [t_ba  r_b ] [s_b]
    // where side A is the reflection side and side B the transmission side.
    struct tr_matrix
    {
        cdouble r_a;  // reflection seen from side A
        cdouble r_b;  // reflection seen from side B
        cdouble t_ab; // transmission B -> A
        cdouble t_ba; // transmission A -> B

        // Output (y_a, y_b) for incident (s_a, s_b).
        std::array<cdouble, 2> apply(cdouble s_a, cdouble s_b) const;
    };

    // Power behaviour of an element, from the eigenvalues of conj(Xi)' * Xi.
    // The coupled design always has one zero eigenvalue, so the usual
    // lossless/lossy/active trichotomy is non-exhaustive; "indefinite" covers
    // matrices that amplify one input direction while absorbing the other.
    enum class energy_class
    {
        passive_lossless,
        passive_lossy,
        active,
        indefinite
    };

    struct energy_classification
    {
        energy_class kind;
        double eig_lo; // smaller eigenvalue of Xi^H * Xi
        double eig_hi; // larger eigenvalue
    };

    const char *to_string(energy_class c);

    // Scattering matrix of the ideal quadrature hybrid,
    //   S = -(1/sqrt(2)) * [[0,j,1,0],[j,0,0,1],[1,0,0,j],[0,1,j,0]],
    // with ports 1/4 facing the two wireless sides and ports 2/3 terminated.
    std::array<std::array<cdouble, 4>, 4> hybrid_scattering_matrix();

    // Coupled phase-shift element: one reflection-type amplifier with response
    // g on amp_port (2 or 3), the other port grounded (total absorption).
    // For amp_port = 2: r_a = -g/2, r_b = +g/2, t = j*g/2; for amp_port = 3 the
    // reflection signs (and with them the two sides' T&R phase-offset roles)
    // are exchanged. Throws std::invalid_argument on non-finite gain or a port
    // outside {2,3}.
    tr_matrix coupled_coefficients(const complex_gain &g, int amp_port);

    // Independent phase-shift element: amplifiers g2 on port 2 and g3 on
    // port 3. r_a = (g3-g2)/2 = -r_b, t = j*(g2+g3)/2. Throws
    // std::invalid_argument on non-finite gains.
    tr_matrix independent_coefficients(const complex_gain &g2, const complex_gain &g3);

    // Gains (g2, g3) that realize a requested reflection r (side A) and
    // transmission t: g3 = r - j*t, g2 = -r - j*t. Inverse of
    // independent_coefficients.
    std::array<complex_gain, 2> gains_for_coefficients(cdouble r, cdouble t);

    // Numerically solves the terminated-coupler port equations
    //   V- = S * V+,  V2+ = g2*V2-,  V3+ = g3*V3-
    // for unit excitations at ports 1 and 4 and returns the effective 2x2
    // response. Oracle for the closed forms above. Throws std::runtime_error
    // when a termination makes the loop equations singular (unstable loop).
    tr_matrix coefficients_from_network(cdouble g2, cdouble g3);

    // As above for an arbitrary 4-port scattering matrix (exposed so the
    // singular-loop path is reachable in tests).
    tr_matrix coefficients_from_network(const std::array<std::array<cdouble, 4>, 4> &s,
                                        cdouble g2, cdouble g3);

    // Classifies an element by the eigenvalues of Xi^H * Xi against 1 with
    // absolute tolerance tol (default 1e-9). Throws std::invalid_argument for
    // tol <= 0.
    energy_classification classify(const tr_matrix &m, double tol = 1e-9);
}

#endif
