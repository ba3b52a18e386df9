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

#include "starsim/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace starsim
{
    noise_model::noise_model(double sigma_v2_in, double sigma_chi2_in)
        : sigma_v2(sigma_v2_in), sigma_chi2(sigma_chi2_in)
    {
        if (!(sigma_v2 >= 0.0) || !(sigma_chi2 >= 0.0))
            throw std::invalid_argument("noise_model: variances must be >= 0");
        if (sigma_v2 == 0.0 && sigma_chi2 == 0.0)
            throw std::invalid_argument("noise_model: variances must not both be 0");
    }

    noise_model noise_for_user(const scenario &sc, user u)
    {
        return noise_model(sc.element_noise_power,
                           u == user::a ? sc.user_noise_power_a : sc.user_noise_power_b);
    }

    outage_query::outage_query(double gamma_target_in, double p_in)
        : gamma_target(gamma_target_in), p(p_in)
    {
        if (!(gamma_target >= 0.0))
            throw std::invalid_argument("outage_query: gamma_target must be >= 0");
        if (!(p > 0.0))
            throw std::invalid_argument("outage_query: p must be > 0");
    }

    namespace
    {
        const rician_params &link_for_user(const scenario &sc, user u)
        {
            return u == user::a ? sc.user_a_link : sc.user_b_link;
        }

        double sigma_sum2(double m, double omega_h, double a_eff, const noise_model &n)
        {
            return m * omega_h * a_eff * n.sigma_v2 + n.sigma_chi2;
        }
    }

    double combined_noise_variance(const scenario &sc, user u)
    {
        const double a = side_amplitude(sc.element, u);
        return sigma_sum2(double(sc.m_elements), link_for_user(sc, u).omega, a * a,
                          noise_for_user(sc, u));
    }

    double combined_noise_variance_literal(const scenario &sc, user u)
    {
        const double a = side_amplitude(sc.element, u);
        return sigma_sum2(double(sc.m_elements), link_for_user(sc, u).omega, a,
                          noise_for_user(sc, u));
    }

    namespace
    {
        // Mean SNR of a phase-aligned user at element count m.
        scaling_estimate scaling_aligned(const scenario &sc, std::size_t m, user u)
        {
            const double md = double(m);
            const double a2 = std::pow(side_amplitude(sc.element, u), 2);
            const rician_params &h = link_for_user(sc, u);
            const rician_params &g = sc.bs_link;
            const noise_model n = noise_for_user(sc, u);
            const double c1 = rician_mean(h) * rician_mean(g); // E|h| * E|g|
            const double p = sc.transmit_power;

            scaling_estimate e;
            // Exact moments: E[(sum |h||g|)^2] and E[|sum h e^{j phi}|^2].
            const double num2 = md * h.omega * g.omega + md * (md - 1.0) * c1 * c1;
            e.second_moment = p * a2 * num2 / (md * h.omega * a2 * n.sigma_v2 + n.sigma_chi2);
            // Squared means: (M E|h| E|g|)^2 and (E|sum h e^{j phi}|)^2 =
            // pi/4 * M * omega_h for uniform relative phases.
            const double num1 = md * md * c1 * c1;
            e.squared_mean = p * a2 * num1 /
                             (md * M_PI / 4.0 * h.omega * a2 * n.sigma_v2 + n.sigma_chi2);
            return e;
        }

    }

    scaling_estimate scaling_scattered(const scenario &sc, std::size_t m, user u)
    {
        const double md = double(m);
        const double a2 = std::pow(side_amplitude(sc.element, u), 2);
        const rician_params &h = link_for_user(sc, u);
        const rician_params &g = sc.bs_link;
        const noise_model n = noise_for_user(sc, u);
        const double p = sc.transmit_power;

        scaling_estimate e;
        e.second_moment = p * a2 * md * h.omega * g.omega /
                          (md * h.omega * a2 * n.sigma_v2 + n.sigma_chi2);
        e.squared_mean = p * a2 * M_PI / 4.0 * md * h.omega * g.omega /
                         (md * M_PI / 4.0 * h.omega * a2 * n.sigma_v2 + n.sigma_chi2);
        return e;
    }

    std::pair<scaling_estimate, scaling_estimate> scaling_coupled(const scenario &sc,
                                                                  std::size_t m)
    {
        if (!std::holds_alternative<coupled_config>(sc.element))
            throw std::invalid_argument("scaling_coupled: scenario is not coupled");
        return {scaling_aligned(sc, m, user::a), scaling_scattered(sc, m, user::b)};
    }

    scaling_estimate scaling_independent(const scenario &sc, std::size_t m, user u)
    {
        if (std::holds_alternative<coupled_config>(sc.element))
            throw std::invalid_argument("scaling_independent: scenario is coupled");
        return scaling_aligned(sc, m, u);
    }

    double coupled_user_b_snr_limit(const scenario &sc)
    {
        if (!(sc.element_noise_power > 0.0))
            throw std::invalid_argument("coupled_user_b_snr_limit: diverges for sigma_v^2 = 0");
        return sc.transmit_power * sc.bs_link.omega / sc.element_noise_power;
    }

    namespace
    {
        outage_asymptotic_result outage_asymptotic_impl(const rician_params &h,
                                                        const rician_params &g,
                                                        const scenario &sc,
                                                        const outage_query &query,
                                                        std::size_t m, user u, bool squared)
        {
            const double md = double(m);
            const double a = side_amplitude(sc.element, u);
            const double a_eff = squared ? a * a : a;
            const double s2 = sigma_sum2(md, h.omega, a_eff, noise_for_user(sc, u));
            const double c = product_pdf_slope(h, g);
            const double bracket = c * s2 * query.gamma_target / a_eff;
            // [bracket/p]^M / (2M)! in log space; (2M)! from the 2M-fold
            // origin behaviour of the sum density.
            const double log_p = md * (std::log(bracket) - std::log(query.p)) -
                                 std::lgamma(2.0 * md + 1.0);
            outage_asymptotic_result r;
            r.probability = std::exp(log_p);
            r.outside_asymptotic_regime = r.probability > 0.1;
            return r;
        }
    }

    outage_asymptotic_result outage_asymptotic(const rician_params &h, const rician_params &g,
                                               const scenario &sc, const outage_query &query,
                                               std::size_t m, user u)
    {
        return outage_asymptotic_impl(h, g, sc, query, m, u, true);
    }

    outage_asymptotic_result outage_asymptotic_literal(const rician_params &h,
                                                       const rician_params &g,
                                                       const scenario &sc,
                                                       const outage_query &query,
                                                       std::size_t m, user u)
    {
        return outage_asymptotic_impl(h, g, sc, query, m, u, false);
    }

    double outage_userB_coupled(const rician_params &h_b, const rician_params &g,
                                const scenario &sc, const outage_query &query, std::size_t m)
    {
        const double md = double(m);
        const double a2 = std::pow(side_amplitude(sc.element, user::b), 2);
        const double s2 = sigma_sum2(md, h_b.omega, a2, noise_for_user(sc, user::b));
        const double x = query.gamma_target * s2 / (md * h_b.omega * g.omega * a2 * query.p);
        return -std::expm1(-x);
    }

    double diversity_order(const std::vector<std::pair<double, double>> &curve)
    {
        if (curve.size() < 3)
            throw std::invalid_argument("diversity_order: need at least 3 points");

        std::vector<std::pair<double, double>> pts = curve;
        std::sort(pts.begin(), pts.end());
        const double p_max = pts.back().first;
        if (!(p_max > 0.0))
            throw std::invalid_argument("diversity_order: powers must be > 0");

        // Fit window: top decade of p, at least the last three points.
        std::size_t first = 0;
        while (first < pts.size() && pts[first].first < p_max / 10.0)
            ++first;
        first = std::min(first, pts.size() - 3);

        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        std::size_t n = 0;
        for (std::size_t i = first; i < pts.size(); ++i)
        {
            if (!(pts[i].second > 0.0))
                throw std::invalid_argument("diversity_order: non-positive outage in fit "
                                            "window (need more trials)");
            const double x = std::log(pts[i].first);
            const double y = -std::log(pts[i].second);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        const double nd = double(n);
        return (nd * sxy - sx * sy) / (nd * sxx - sx * sx);
    }

    std::vector<summary_row> summary_table(const scenario &sc)
    {
        const std::size_t m = sc.m_elements;
        return {
            {"active-coupled", m + 1, "user A ~ M, user B bounded"},
            {"active-independent", 2 * m, "~ M"},
            {"passive-lossless", 2 * m, "~ M^2"},
        };
    }
}
