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

#include "starsim/fading.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace starsim
{
    rician_params::rician_params(double k_in, double omega_in) : k(k_in), omega(omega_in)
    {
        if (!(k >= 0.0) || !std::isfinite(k))
            throw std::invalid_argument("rician_params: k must be finite and >= 0");
        if (!(omega > 0.0) || !std::isfinite(omega))
            throw std::invalid_argument("rician_params: omega must be finite and > 0");
    }

    path_loss::path_loss(double distance_in, double exponent_in)
        : distance(distance_in), exponent(exponent_in)
    {
        if (!(distance > 0.0))
            throw std::invalid_argument("path_loss: distance must be > 0");
        if (!(exponent > 0.0))
            throw std::invalid_argument("path_loss: exponent must be > 0");
    }

    double path_loss::omega() const
    {
        return std::pow(distance, -exponent);
    }

    double db_to_linear(double db)
    {
        return std::pow(10.0, db / 10.0);
    }

    double dbm_to_watts(double dbm)
    {
        return std::pow(10.0, (dbm - 30.0) / 10.0);
    }

    std::complex<double> sample_rician(const rician_params &params, random_stream &rng)
    {
        const double nu = std::sqrt(params.k * params.omega / (params.k + 1.0));
        const double theta0 = rng.uniform(0.0, 2.0 * M_PI);
        const std::complex<double> w = rng.circular_gaussian(params.omega / (params.k + 1.0));
        return std::polar(nu, theta0) + w;
    }

    namespace
    {
        // Uniform asymptotic series for exp(-x)*I_nu(x), x large.
        double bessel_scaled_asymptotic(double x, double mu)
        {
            const double ix = 1.0 / (8.0 * x);
            double term = 1.0;
            double sum = 1.0;
            // (mu - (2k-1)^2) factors; four terms are ample for x > 30.
            const double f1 = mu - 1.0, f2 = mu - 9.0, f3 = mu - 25.0, f4 = mu - 49.0;
            term *= -f1 * ix;
            sum += term;
            term *= -f2 * ix / 2.0;
            sum += term;
            term *= -f3 * ix / 3.0;
            sum += term;
            term *= -f4 * ix / 4.0;
            sum += term;
            return sum / std::sqrt(2.0 * M_PI * x);
        }
    }

    double bessel_i0_scaled(double x)
    {
        x = std::abs(x);
        if (x > 30.0)
            return bessel_scaled_asymptotic(x, 0.0);
        // Power series of I0, scaled afterwards; converges fast for x <= 30.
        double term = 1.0, sum = 1.0;
        const double q = 0.25 * x * x;
        for (int n = 1; n < 80; ++n)
        {
            term *= q / (double(n) * double(n));
            sum += term;
            if (term < 1e-18 * sum)
                break;
        }
        return sum * std::exp(-x);
    }

    double bessel_i1_scaled(double x)
    {
        const double ax = std::abs(x);
        const double sign = x < 0.0 ? -1.0 : 1.0;
        if (ax > 30.0)
            return sign * bessel_scaled_asymptotic(ax, 4.0);
        double term = 0.5 * ax, sum = term;
        const double q = 0.25 * ax * ax;
        for (int n = 1; n < 80; ++n)
        {
            term *= q / (double(n) * double(n + 1));
            sum += term;
            if (term < 1e-18 * sum)
                break;
        }
        return sign * sum * std::exp(-ax);
    }

    double rician_mean(const rician_params &params)
    {
        const double k = params.k;
        const double sigma = std::sqrt(params.omega / (2.0 * (k + 1.0)));
        const double half_k = 0.5 * k;
        // exp(-k/2) * I_n(k/2) is exactly the scaled Bessel at k/2, so no
        // explicit exponential survives here.
        const double bracket = (1.0 + k) * bessel_i0_scaled(half_k) + k * bessel_i1_scaled(half_k);
        return sigma * std::sqrt(M_PI / 2.0) * bracket;
    }

    double estimate_rician_k(double mean_power, double fourth_moment)
    {
        if (!(mean_power > 0.0) || !(fourth_moment > 0.0))
            throw std::invalid_argument("estimate_rician_k: moments must be > 0");
        // r = E[|h|^4] / E[|h|^2]^2 = (k^2 + 4k + 2) / (k + 1)^2, i.e.
        // (r-1)*k^2 + (2r-4)*k + (r-2) = 0 with discriminant 4*(2-r), whose
        // positive root collapses to k = u / (1 - u) with u = sqrt(2 - r).
        const double r = fourth_moment / (mean_power * mean_power);
        if (r >= 2.0)
            return 0.0; // at or beyond the Rayleigh point
        if (r <= 1.0)
            return std::numeric_limits<double>::infinity(); // deterministic envelope
        const double u = std::sqrt(2.0 - r);
        return u / (1.0 - u);
    }

    double product_pdf_slope(const rician_params &h, const rician_params &g)
    {
        return 4.0 * (h.k + 1.0) * (g.k + 1.0) / (h.omega * g.omega * std::exp(h.k + g.k));
    }

    double cascaded_sum_pdf_asymptotic(const rician_params &h, const rician_params &g,
                                       int m_elements, double x)
    {
        if (m_elements < 1)
            throw std::invalid_argument("cascaded_sum_pdf_asymptotic: m_elements must be >= 1");
        if (!(x >= 0.0))
            throw std::invalid_argument("cascaded_sum_pdf_asymptotic: x must be >= 0");
        if (x == 0.0)
            return 0.0; // density vanishes at the origin for every M >= 1
        const double m = double(m_elements);
        const double c = product_pdf_slope(h, g);
        // c^M * x^(2M-1) / (2M-1)! in log space to dodge factorial overflow.
        const double log_f = m * std::log(c) + (2.0 * m - 1.0) * std::log(x) - std::lgamma(2.0 * m);
        return std::exp(log_f);
    }
}
