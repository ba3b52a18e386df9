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

#ifndef starsim_fading_H
#define starsim_fading_H

#include <complex>

#include "starsim/rng.hpp"

namespace starsim
{
    // Rician fading link: linear K-factor (line-of-sight power over scattered
    // power) and mean channel power omega = E[|h|^2].
    struct rician_params
    {
        double k;     // >= 0, dimensionless
        double omega; // > 0, dimensionless after path-loss normalization

        rician_params(double k_in = 0.0, double omega_in = 1.0);
    };

    // Distance-law power: omega = distance^(-exponent), 1 m reference with
    // unit reference gain.
    struct path_loss
    {
        double distance; // meters, > 0
        double exponent; // > 0

        path_loss(double distance_in, double exponent_in);
        double omega() const;
    };

    double db_to_linear(double db);   // power ratio 10^(db/10)
    double dbm_to_watts(double dbm);  // 10^((dbm-30)/10)

    // One channel coefficient h = nu*exp(j*theta0) + w with nu^2 =
    // k*omega/(k+1), w circular Gaussian of variance omega/(k+1) and theta0
    // uniform, so |h| is Rician and the phase of h is uniform.
    std::complex<double> sample_rician(const rician_params &params, random_stream &rng);

    // Exponentially scaled modified Bessel functions exp(-x)*I0(x), exp(-x)*I1(x);
    // stable for large arguments where I_n itself overflows.
    double bessel_i0_scaled(double x);
    double bessel_i1_scaled(double x);

    // Mean envelope E[|h|] = sigma*sqrt(pi/2)*exp(-k/2)*((1+k)*I0(k/2)+k*I1(k/2))
    // with sigma^2 = omega/(2(k+1)); evaluated in scaled form.
    double rician_mean(const rician_params &params);

    // Moment-based K-factor estimate from the empirical second and fourth
    // envelope moments. The ratio r = m4/m2^2 = (k^2+4k+2)/(k+1)^2 inverts
    // exactly to k = u/(1-u), u = sqrt(2-r). Returns 0 at or beyond the
    // Rayleigh point (r >= 2) and +infinity for r <= 1 (a deterministic
    // envelope); throws std::invalid_argument for non-positive moments.
    double estimate_rician_k(double mean_power, double fourth_moment);

    // First-order coefficient c of the product-envelope density near the
    // origin: f_{|h||g|}(x) = c*x + o(x) with
    // c = 4(k_h+1)(k_g+1) / (omega_h*omega_g*exp(k_h+k_g)).
    // Note: the o(x) remainder carries a log(1/x) factor, so finite-x
    // histogram slopes sit well above c; see docs/model.md, appendix notes.
    double product_pdf_slope(const rician_params &h, const rician_params &g);

    // Near-origin density of the M-fold sum of independent product envelopes,
    // from term-by-term Laplace inversion of the first-order expansion:
    // f(x) = c^M * x^(2M-1) / (2M-1)!. Same caveat on dropped log factors.
    double cascaded_sum_pdf_asymptotic(const rician_params &h, const rician_params &g,
                                       int m_elements, double x);
}

#endif
