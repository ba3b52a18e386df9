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

#ifndef starsim_mc_H
#define starsim_mc_H

#include <cstdint>
#include <string>
#include <vector>

#include "starsim/analytics.hpp"
#include "starsim/link.hpp"

namespace starsim
{
    // Engine configuration. Randomness is counter-based and keyed on
    // (master_seed, trial index), so estimates are bit-identical for any
    // worker count or batch partitioning.
    struct mc_config
    {
        std::uint64_t trials = 100000;
        std::uint64_t master_seed = 1;
        std::uint64_t batch_size = 4096;  // trials per work unit; clamped to trials
        double confidence_level = 0.95;   // in (0,1)

        void validate() const; // throws std::invalid_argument
    };

    // Execution policy: "openmp" distributes batches across threads;
    // "serial_reference" is an independent plain-loop implementation kept for
    // testing the parallel kernels. Both produce bit-identical output.
    enum class exec_policy
    {
        openmp,
        serial_reference
    };

    struct estimate
    {
        double value = 0.0;
        double std_error = 0.0;
        double ci_low = 0.0;
        double ci_high = 0.0;
        std::uint64_t trials_used = 0;
        std::uint64_t events = 0;  // failure events (outage metric only)
        bool unresolved = false;   // < 20 events: too deep for this trial budget
    };

    // Inverse standard normal CDF (Acklam's rational approximation,
    // |relative error| < 1.2e-9); p in (0,1).
    double normal_quantile(double p);

    // Wilson score interval for a binomial proportion.
    void wilson_interval(std::uint64_t events, std::uint64_t trials, double confidence_level,
                         double &low, double &high);

    // P(received SNR < gamma_target) for one user under the given alignment.
    // gamma_target <= 0 short-circuits to an exact zero estimate (SNR is
    // nonnegative by construction).
    estimate estimate_outage(const scenario &sc, const outage_query &query,
                             align_target align, user u, const mc_config &cfg,
                             exec_policy policy = exec_policy::openmp);

    // Outage at several transmit powers from one shared set of channel draws
    // (the SNR is linear in p at fixed draw, so a single realization serves
    // every power). Correlated across points: ideal for slope fitting.
    // p_grid in watts, strictly increasing.
    std::vector<estimate> estimate_outage_curve(const scenario &sc, double gamma_target,
                                                const std::vector<double> &p_grid,
                                                align_target align, user u,
                                                const mc_config &cfg,
                                                exec_policy policy = exec_policy::openmp);

    // Sample mean of the received SNR with a normal-theory interval.
    estimate estimate_mean_snr(const scenario &sc, align_target align, user u,
                               const mc_config &cfg,
                               exec_policy policy = exec_policy::openmp);

    // ------------------------------------------------------------- sweeps ---
    enum class sweep_axis
    {
        element_count,
        transmit_power
    };

    enum class sweep_metric
    {
        outage,
        mean_snr
    };

    struct sweep_spec
    {
        sweep_axis axis = sweep_axis::transmit_power;
        sweep_metric metric = sweep_metric::outage;
        std::vector<double> grid;                   // strictly increasing; M or p [W]
        align_target align = align_target::user_a;
        user target_user = user::a;
        double gamma_target = 1.0;                  // linear; outage metric only
    };

    // Labeled curve with analytical overlays, ready for CSV export.
    // analytic_primary carries the oracle-matching closed form,
    // analytic_alt the printed/alternative variant (NaN where none applies).
    struct sweep_result
    {
        std::string axis;   // "m_elements" or "transmit_power_w"
        std::string metric; // "outage" or "mean_snr"
        std::vector<double> x;
        std::vector<estimate> estimates;
        std::vector<double> analytic_primary;
        std::vector<double> analytic_alt;
    };

    // Evaluates the metric over the grid with per-point seeds derived from
    // (master_seed, point index). Per-point failures are rethrown annotated
    // with the point index and x value.
    sweep_result sweep(const scenario &sc, const sweep_spec &spec, const mc_config &cfg,
                       exec_policy policy = exec_policy::openmp);
}

#endif
