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

#ifndef starsim_analytics_H
#define starsim_analytics_H

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "starsim/scenario.hpp"

namespace starsim
{
    // Noise variances entering one user's SNR denominator.
    struct noise_model
    {
        double sigma_v2;   // element (amplifier) noise [W]
        double sigma_chi2; // receiver noise [W]

        noise_model(double sigma_v2_in, double sigma_chi2_in);
    };

    noise_model noise_for_user(const scenario &sc, user u);

    // Outage query point: linear SNR threshold and transmit power. A zero
    // threshold is admitted (outage is then exactly 0, the SNR being
    // nonnegative); negative thresholds are rejected.
    struct outage_query
    {
        double gamma_target; // >= 0, linear
        double p;            // > 0, watts

        outage_query(double gamma_target_in, double p_in);
    };

    // Variance of the combined (surface-filtered element + receiver) noise:
    //   sigma_sum^2 = M * omega_h * A^2 * sigma_v^2 + sigma_chi^2
    // with A the user's per-element coefficient magnitude. The squared A is a
    // deliberate correction of the unsquared printed form (see
    // combined_noise_variance_literal and the validation report); the Monte
    // Carlo denominator oracle matches only the squared version.
    double combined_noise_variance(const scenario &sc, user u);

    // Literal unsquared-A variant, kept for the discrepancy report.
    double combined_noise_variance_literal(const scenario &sc, user u);

    // Mean-SNR approximations. second_moment forms every power ratio from
    // exact second moments (matches Monte Carlo sample means away from the
    // element-noise-dominated spike regime); squared_mean uses squared mean
    // envelopes, which puts pi/4 factors in front of the fluctuating sums.
    struct scaling_estimate
    {
        double second_moment; // overlay value ("analytic_primary")
        double squared_mean;  // alternative ("analytic_alt")
    };

    // Coupled surface, user A aligned: mean SNR of (user A, user B) at
    // element count m. Throws std::invalid_argument unless the scenario holds
    // a coupled_config.
    std::pair<scaling_estimate, scaling_estimate> scaling_coupled(const scenario &sc,
                                                                  std::size_t m);

    // Independent (or passive) surface with both users aligned: mean SNR of
    // user u at element count m. Throws std::invalid_argument for coupled.
    scaling_estimate scaling_independent(const scenario &sc, std::size_t m, user u);

    // Mean SNR of a user whose cascade phases are uniformly random (the
    // coupled non-aligned side, or any side left unaligned); works for every
    // element configuration.
    scaling_estimate scaling_scattered(const scenario &sc, std::size_t m, user u);

    // Large-M limit of the coupled user-B mean SNR: p * omega_g / sigma_v^2
    // (identical for both variants). Throws std::invalid_argument when
    // sigma_v^2 = 0 (the limit diverges).
    double coupled_user_b_snr_limit(const scenario &sc);

    // High-power outage of an aligned user from the near-origin expansion of
    // the cascade-sum density:
    //   P = [c * sigma_sum^2 * gamma_t / A^2]^M * p^(-M) / (2M)!
    // with c the product-envelope slope of (h, g). Values above 0.1 are
    // outside the expansion's validity and flagged, not clamped.
    struct outage_asymptotic_result
    {
        double probability;
        bool outside_asymptotic_regime;
    };

    outage_asymptotic_result outage_asymptotic(const rician_params &h, const rician_params &g,
                                               const scenario &sc, const outage_query &query,
                                               std::size_t m, user u = user::a);

    // Literal variant with the unsquared per-element magnitude in both the
    // bracket denominator and sigma_sum^2; retained for the report's
    // discrepancy section.
    outage_asymptotic_result outage_asymptotic_literal(const rician_params &h,
                                                       const rician_params &g,
                                                       const scenario &sc,
                                                       const outage_query &query,
                                                       std::size_t m, user u = user::a);

    // Exact Rayleigh-limit outage of the coupled, non-aligned user B:
    //   P = 1 - exp(-gamma_t * sigma_sum^2 / (M * omega_h * omega_g * A^2 * p)).
    double outage_userB_coupled(const rician_params &h_b, const rician_params &g,
                                const scenario &sc, const outage_query &query, std::size_t m);

    // Diversity order: least-squares slope of -log(outage) against log(p)
    // over the top decade of p (extended to the last three points when the
    // decade holds fewer). Requires >= 3 points with positive outage in the
    // fit window; throws std::invalid_argument otherwise.
    double diversity_order(const std::vector<std::pair<double, double>> &curve);

    // Comparison row for the three surface families at a given M.
    struct summary_row
    {
        std::string configuration;
        std::size_t sum_diversity;
        std::string snr_scaling;
    };

    std::vector<summary_row> summary_table(const scenario &sc);
}

#endif
