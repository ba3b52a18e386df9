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

#include "starsim/element.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace starsim
{
    namespace
    {
        double wrap_phase(double phase)
        {
            double p = std::fmod(phase, 2.0 * M_PI);
            if (p < 0.0)
                p += 2.0 * M_PI;
            return p;
        }

        void require_finite(const complex_gain &g, const char *name)
        {
            if (!std::isfinite(g.amplitude) || !std::isfinite(g.phase))
                throw std::invalid_argument(std::string("non-finite gain: ") + name);
        }
    }

    complex_gain::complex_gain(double amplitude_in, double phase_in)
        : amplitude(amplitude_in), phase(std::isfinite(phase_in) ? wrap_phase(phase_in) : phase_in)
    {
        if (amplitude < 0.0)
            throw std::invalid_argument("complex_gain: amplitude must be >= 0");
    }

    complex_gain complex_gain::from_value(cdouble v)
    {
        return complex_gain(std::abs(v), std::arg(v));
    }

    cdouble complex_gain::value() const
    {
        return std::polar(amplitude, phase);
    }

    double amplitude_from_db(double power_db)
    {
        return std::pow(10.0, power_db / 20.0);
    }

    std::array<cdouble, 2> tr_matrix::apply(cdouble s_a, cdouble s_b) const
    {
        return {r_a * s_a + t_ab * s_b, t_ba * s_a + r_b * s_b};
    }

    const char *to_string(energy_class c)
    {
        switch (c)
        {
        case energy_class::passive_lossless:
            return "passive-lossless";
        case energy_class::passive_lossy:
            return "passive-lossy";
        case energy_class::active:
            return "active";
        default:
            return "indefinite";
        }
    }

    std::array<std::array<cdouble, 4>, 4> hybrid_scattering_matrix()
    {
        const double a = -1.0 / std::sqrt(2.0);
        const cdouble j(0.0, 1.0);
        const cdouble o(0.0, 0.0);
        return {{{o, a * j, a, o},
                 {a * j, o, o, a},
                 {a, o, o, a * j},
                 {o, a, a * j, o}}};
    }

    tr_matrix coupled_coefficients(const complex_gain &g, int amp_port)
    {
        require_finite(g, "g");
        if (amp_port != 2 && amp_port != 3)
            throw std::invalid_argument("coupled_coefficients: amp_port must be 2 or 3");
        const cdouble gv = g.value();
        const cdouble j(0.0, 1.0);
        tr_matrix m;
        m.t_ab = m.t_ba = j * gv / 2.0;
        if (amp_port == 2)
        {
            m.r_a = -gv / 2.0;
            m.r_b = gv / 2.0;
        }
        else
        {
            m.r_a = gv / 2.0;
            m.r_b = -gv / 2.0;
        }
        return m;
    }

    tr_matrix independent_coefficients(const complex_gain &g2, const complex_gain &g3)
    {
        require_finite(g2, "g2");
        require_finite(g3, "g3");
        const cdouble v2 = g2.value();
        const cdouble v3 = g3.value();
        const cdouble j(0.0, 1.0);
        tr_matrix m;
        m.r_a = (v3 - v2) / 2.0;
        m.r_b = -m.r_a;
        m.t_ab = m.t_ba = j * (v2 + v3) / 2.0;
        return m;
    }

    std::array<complex_gain, 2> gains_for_coefficients(cdouble r, cdouble t)
    {
        const cdouble j(0.0, 1.0);
        return {complex_gain::from_value(-r - j * t), complex_gain::from_value(r - j * t)};
    }

    tr_matrix coefficients_from_network(cdouble g2, cdouble g3)
    {
        return coefficients_from_network(hybrid_scattering_matrix(), g2, g3);
    }

    tr_matrix coefficients_from_network(const std::array<std::array<cdouble, 4>, 4> &s,
                                        cdouble g2, cdouble g3)
    {
        // Terminations feed outgoing waves back in: V2+ = g2*V2-, V3+ = g3*V3-.
        // Substituting into V- = S*V+ gives (I - S*D)*V- = S*(e1*V1+ + e4*V4+)
        // with D = diag(0, g2, g3, 0); each wireless excitation is one solve.
        Eigen::Matrix4cd sm;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                sm(r, c) = s[std::size_t(r)][std::size_t(c)];

        Eigen::Vector4cd d(0.0, g2, g3, 0.0);
        Eigen::Matrix4cd a = Eigen::Matrix4cd::Identity() - sm * d.asDiagonal();

        Eigen::FullPivLU<Eigen::Matrix4cd> lu(a);
        if (!lu.isInvertible())
            throw std::runtime_error("coefficients_from_network: singular port constraints "
                                     "(termination forms an unstable loop)");

        Eigen::Vector4cd out_a = lu.solve(sm * Eigen::Vector4cd(1.0, 0.0, 0.0, 0.0));
        Eigen::Vector4cd out_b = lu.solve(sm * Eigen::Vector4cd(0.0, 0.0, 0.0, 1.0));

        tr_matrix m;
        m.r_a = out_a(0);  // V1- for side-A excitation
        m.t_ba = out_a(3); // V4- for side-A excitation
        m.t_ab = out_b(0); // V1- for side-B excitation
        m.r_b = out_b(3);  // V4- for side-B excitation
        return m;
    }

    energy_classification classify(const tr_matrix &m, double tol)
    {
        if (!(tol > 0.0))
            throw std::invalid_argument("classify: tol must be > 0");

        // Eigenvalues of the 2x2 Hermitian Gram matrix Xi^H * Xi.
        const double a = std::norm(m.r_a) + std::norm(m.t_ba);
        const double d = std::norm(m.t_ab) + std::norm(m.r_b);
        const cdouble b = std::conj(m.r_a) * m.t_ab + std::conj(m.t_ba) * m.r_b;
        const double mid = 0.5 * (a + d);
        const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));

        energy_classification ec;
        ec.eig_lo = mid - rad;
        ec.eig_hi = mid + rad;

        const bool lo_unit = std::abs(ec.eig_lo - 1.0) <= tol;
        const bool hi_unit = std::abs(ec.eig_hi - 1.0) <= tol;
        if (lo_unit && hi_unit)
            ec.kind = energy_class::passive_lossless;
        else if (ec.eig_hi <= 1.0 + tol && ec.eig_lo < 1.0 - tol)
            ec.kind = energy_class::passive_lossy;
        else if (ec.eig_lo >= 1.0 - tol && ec.eig_hi > 1.0 + tol)
            ec.kind = energy_class::active;
        else
            ec.kind = energy_class::indefinite;
        return ec;
    }
}
