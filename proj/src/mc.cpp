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

#include "starsim/mc.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace starsim
{
    void mc_config::validate() const
    {
        if (trials < 1)
            throw std::invalid_argument("mc_config: trials must be >= 1");
        if (batch_size < 1)
            throw std::invalid_argument("mc_config: batch_size must be >= 1");
        if (!(confidence_level > 0.0) || !(confidence_level < 1.0))
            throw std::invalid_argument("mc_config: confidence_level must be in (0,1)");
    }

    double normal_quantile(double p)
    {
        if (!(p > 0.0) || !(p < 1.0))
            throw std::invalid_argument("normal_quantile: p must be in (0,1)");

        // Acklam's rational approximation with central/tail split.
        static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
        static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
        static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00, 2.938163982698783e+00};
        static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
        const double p_low = 0.02425;

        if (p < p_low)
        {
            const double q = std::sqrt(-2.0 * std::log(p));
            return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
                   ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
        }
        if (p > 1.0 - p_low)
            return -normal_quantile(1.0 - p);

        const double q = p - 0.5;
        const double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }

    void wilson_interval(std::uint64_t events, std::uint64_t trials, double confidence_level,
                         double &low, double &high)
    {
        if (trials == 0)
            throw std::invalid_argument("wilson_interval: trials must be > 0");
        const double z = normal_quantile(0.5 + confidence_level / 2.0);
        const double n = double(trials);
        const double phat = double(events) / n;
        const double z2n = z * z / n;
        const double denom = 1.0 + z2n;
        const double center = (phat + z2n / 2.0) / denom;
        const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2n / (4.0 * n)) / denom;
        low = std::max(0.0, center - half);
        high = std::min(1.0, center + half);
    }

    namespace
    {
        // Deterministic batch partition: batch b covers trials
        // [b*bs, min(trials, (b+1)*bs)). Per-batch tallies are merged in
        // batch order regardless of which worker produced them.
        struct batch_plan
        {
            std::uint64_t trials;
            std::uint64_t batch;
            std::uint64_t n_batches;
        };

        batch_plan plan_batches(const mc_config &cfg)
        {
            batch_plan p;
            p.trials = cfg.trials;
            p.batch = std::min(cfg.batch_size, cfg.trials);
            p.n_batches = (p.trials + p.batch - 1) / p.batch;
            return p;
        }

        // Per-trial SNR-to-power ratio: gamma(p) = p * ratio at a fixed draw.
        double snr_ratio_for_trial(const scenario &sc_unit, align_target align, user u,
                                   std::uint64_t seed, std::uint64_t trial,
                                   channel_draw &draw, phase_set &phases)
        {
            random_stream stream(seed, trial);
            draw_channels(sc_unit, stream, draw);
            cophase_phases(draw, sc_unit, align, phases);
            return received_snr(draw, phases, sc_unit, u);
        }

        // Counts of {ratio < threshold_i} per batch. thresholds must be
        // sorted descending so one pass with early exit stays cheap.
        void count_batch(const scenario &sc_unit, align_target align, user u,
                         std::uint64_t seed, std::uint64_t lo, std::uint64_t hi,
                         const std::vector<double> &thresholds,
                         std::vector<std::uint64_t> &counts,
                         channel_draw &draw, phase_set &phases)
        {
            for (std::uint64_t t = lo; t < hi; ++t)
            {
                const double ratio = snr_ratio_for_trial(sc_unit, align, u, seed, t,
                                                         draw, phases);
                for (std::size_t i = 0; i < thresholds.size(); ++i)
                {
                    if (ratio < thresholds[i])
                        ++counts[i];
                    else
                        break; // descending thresholds: later ones are smaller
                }
            }
        }

        std::vector<std::uint64_t> run_counts(const scenario &sc_unit, align_target align,
                                              user u, const mc_config &cfg,
                                              const std::vector<double> &thresholds,
                                              exec_policy policy)
        {
            const batch_plan bp = plan_batches(cfg);
            const std::size_t k = thresholds.size();
            std::vector<std::vector<std::uint64_t>> tallies(bp.n_batches,
                                                            std::vector<std::uint64_t>(k, 0));

            if (policy == exec_policy::serial_reference)
            {
                // Reference path: plain nested loops, no worker scheduling.
                channel_draw draw;
                phase_set phases;
                for (std::uint64_t b = 0; b < bp.n_batches; ++b)
                {
                    const std::uint64_t lo = b * bp.batch;
                    const std::uint64_t hi = std::min(bp.trials, lo + bp.batch);
                    count_batch(sc_unit, align, u, cfg.master_seed, lo, hi, thresholds,
                                tallies[b], draw, phases);
                }
            }
            else
            {
#pragma omp parallel
                {
                    channel_draw draw;
                    phase_set phases;
#pragma omp for schedule(static)
                    for (long long b = 0; b < (long long)bp.n_batches; ++b)
                    {
                        const std::uint64_t lo = std::uint64_t(b) * bp.batch;
                        const std::uint64_t hi = std::min(bp.trials, lo + bp.batch);
                        count_batch(sc_unit, align, u, cfg.master_seed, lo, hi, thresholds,
                                    tallies[std::size_t(b)], draw, phases);
                    }
                }
            }

            // Integer merge in batch order (exact regardless of scheduling).
            std::vector<std::uint64_t> total(k, 0);
            for (const auto &t : tallies)
                for (std::size_t i = 0; i < k; ++i)
                    total[i] += t[i];
            return total;
        }

        estimate proportion_estimate(std::uint64_t events, const mc_config &cfg)
        {
            estimate e;
            e.trials_used = cfg.trials;
            e.events = events;
            const double n = double(cfg.trials);
            e.value = double(events) / n;
            e.std_error = std::sqrt(e.value * (1.0 - e.value) / n);
            wilson_interval(events, cfg.trials, cfg.confidence_level, e.ci_low, e.ci_high);
            e.unresolved = events < 20;
            return e;
        }
    }

    estimate estimate_outage(const scenario &sc, const outage_query &query,
                             align_target align, user u, const mc_config &cfg,
                             exec_policy policy)
    {
        sc.validate();
        cfg.validate();
        if (query.gamma_target <= 0.0)
        {
            // SNR >= 0 always: a nonpositive threshold can never be crossed.
            estimate e;
            e.trials_used = cfg.trials;
            return e;
        }
        scenario sc_unit = sc;
        sc_unit.transmit_power = 1.0;
        const std::vector<double> thresholds{query.gamma_target / query.p};
        const auto counts = run_counts(sc_unit, align, u, cfg, thresholds, policy);
        return proportion_estimate(counts[0], cfg);
    }

    std::vector<estimate> estimate_outage_curve(const scenario &sc, double gamma_target,
                                                const std::vector<double> &p_grid,
                                                align_target align, user u,
                                                const mc_config &cfg, exec_policy policy)
    {
        sc.validate();
        cfg.validate();
        if (p_grid.empty())
            throw std::invalid_argument("estimate_outage_curve: empty power grid");
        for (std::size_t i = 0; i < p_grid.size(); ++i)
        {
            if (!(p_grid[i] > 0.0))
                throw std::invalid_argument("estimate_outage_curve: powers must be > 0");
            if (i > 0 && !(p_grid[i] > p_grid[i - 1]))
                throw std::invalid_argument("estimate_outage_curve: grid must be strictly "
                                            "increasing");
        }
        if (gamma_target <= 0.0)
            return std::vector<estimate>(p_grid.size(), [&] {
                estimate e;
                e.trials_used = cfg.trials;
                return e;
            }());

        scenario sc_unit = sc;
        sc_unit.transmit_power = 1.0;
        // Increasing p means decreasing threshold gamma/p: already descending.
        std::vector<double> thresholds(p_grid.size());
        for (std::size_t i = 0; i < p_grid.size(); ++i)
            thresholds[i] = gamma_target / p_grid[i];

        const auto counts = run_counts(sc_unit, align, u, cfg, thresholds, policy);
        std::vector<estimate> out(p_grid.size());
        for (std::size_t i = 0; i < p_grid.size(); ++i)
            out[i] = proportion_estimate(counts[i], cfg);
        return out;
    }

    estimate estimate_mean_snr(const scenario &sc, align_target align, user u,
                               const mc_config &cfg, exec_policy policy)
    {
        sc.validate();
        cfg.validate();
        const batch_plan bp = plan_batches(cfg);

        struct moments
        {
            double sum = 0.0;
            double sum_sq = 0.0;
        };
        std::vector<moments> tallies(bp.n_batches);

        auto run_batch = [&](std::uint64_t b, channel_draw &draw, phase_set &phases) {
            const std::uint64_t lo = b * bp.batch;
            const std::uint64_t hi = std::min(bp.trials, lo + bp.batch);
            moments m;
            for (std::uint64_t t = lo; t < hi; ++t)
            {
                const double ratio = snr_ratio_for_trial(sc, align, u, cfg.master_seed, t,
                                                         draw, phases);
                m.sum += ratio;
                m.sum_sq += ratio * ratio;
            }
            tallies[b] = m;
        };

        // The unit-power trick is skipped here: snr_ratio_for_trial runs on
        // the scenario as-is, so "ratio" is the full SNR.
        if (policy == exec_policy::serial_reference)
        {
            channel_draw draw;
            phase_set phases;
            for (std::uint64_t b = 0; b < bp.n_batches; ++b)
                run_batch(b, draw, phases);
        }
        else
        {
#pragma omp parallel
            {
                channel_draw draw;
                phase_set phases;
#pragma omp for schedule(static)
                for (long long b = 0; b < (long long)bp.n_batches; ++b)
                    run_batch(std::uint64_t(b), draw, phases);
            }
        }

        // Fixed-order merge keeps floating-point sums identical across
        // worker counts.
        double sum = 0.0, sum_sq = 0.0;
        for (const auto &m : tallies)
        {
            sum += m.sum;
            sum_sq += m.sum_sq;
        }

        estimate e;
        e.trials_used = cfg.trials;
        const double n = double(cfg.trials);
        e.value = sum / n;
        const double var = cfg.trials > 1
                               ? std::max(0.0, (sum_sq - n * e.value * e.value) / (n - 1.0))
                               : 0.0;
        e.std_error = std::sqrt(var / n);
        const double z = normal_quantile(0.5 + cfg.confidence_level / 2.0);
        e.ci_low = e.value - z * e.std_error;
        e.ci_high = e.value + z * e.std_error;
        return e;
    }

    namespace
    {
        bool is_aligned(align_target align, user u)
        {
            return align == align_target::both ||
                   (align == align_target::user_a && u == user::a) ||
                   (align == align_target::user_b && u == user::b);
        }

        // Closed-form overlays for one sweep point.
        void overlays_for_point(const scenario &sc, const sweep_spec &spec, double p_watts,
                                double &primary, double &alt)
        {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            const user u = spec.target_user;
            const bool aligned = is_aligned(spec.align, u);
            const rician_params &h = u == user::a ? sc.user_a_link : sc.user_b_link;

            if (spec.metric == sweep_metric::mean_snr)
            {
                scaling_estimate se;
                if (!aligned)
                    se = scaling_scattered(sc, sc.m_elements, u);
                else if (std::holds_alternative<coupled_config>(sc.element))
                {
                    // scaling_coupled reports (aligned side, scattered side)
                    // in the scenario's A/B slots; orient the queried user
                    // into the aligned slot first.
                    scenario oriented = sc;
                    if (u == user::b)
                    {
                        std::swap(oriented.user_a_link, oriented.user_b_link);
                        std::swap(oriented.user_noise_power_a, oriented.user_noise_power_b);
                    }
                    se = scaling_coupled(oriented, sc.m_elements).first;
                }
                else
                    se = scaling_independent(sc, sc.m_elements, u);
                primary = se.second_moment;
                alt = se.squared_mean;
                return;
            }

            const outage_query q(spec.gamma_target, p_watts);
            if (aligned)
            {
                primary = outage_asymptotic(h, sc.bs_link, sc, q, sc.m_elements, u).probability;
                alt = outage_asymptotic_literal(h, sc.bs_link, sc, q, sc.m_elements, u)
                          .probability;
            }
            else
            {
                // Scattered cascade phases: Rayleigh-limit expression.
                primary = outage_userB_coupled(h, sc.bs_link, sc, q, sc.m_elements);
                alt = nan;
            }
        }
    }

    sweep_result sweep(const scenario &sc, const sweep_spec &spec, const mc_config &cfg,
                       exec_policy policy)
    {
        sc.validate();
        cfg.validate();
        if (spec.grid.empty())
            throw std::invalid_argument("sweep: empty grid");
        for (std::size_t i = 1; i < spec.grid.size(); ++i)
            if (!(spec.grid[i] > spec.grid[i - 1]))
                throw std::invalid_argument("sweep: grid must be strictly increasing");

        sweep_result res;
        res.axis = spec.axis == sweep_axis::element_count ? "m_elements" : "transmit_power_w";
        res.metric = spec.metric == sweep_metric::outage ? "outage" : "mean_snr";
        res.x = spec.grid;

        for (std::size_t i = 0; i < spec.grid.size(); ++i)
        {
            try
            {
                scenario point = sc;
                if (spec.axis == sweep_axis::element_count)
                {
                    const double m = spec.grid[i];
                    if (!(m >= 1.0) || m != std::floor(m))
                        throw std::invalid_argument("element counts must be integers >= 1");
                    point.m_elements = std::size_t(m);
                }
                else
                {
                    if (!(spec.grid[i] > 0.0))
                        throw std::invalid_argument("transmit powers must be > 0");
                    point.transmit_power = spec.grid[i];
                }

                mc_config point_cfg = cfg;
                point_cfg.master_seed = derive_seed(cfg.master_seed, i);

                estimate est;
                if (spec.metric == sweep_metric::outage)
                    est = estimate_outage(point,
                                          outage_query(spec.gamma_target,
                                                       point.transmit_power),
                                          spec.align, spec.target_user, point_cfg, policy);
                else
                    est = estimate_mean_snr(point, spec.align, spec.target_user, point_cfg,
                                            policy);
                res.estimates.push_back(est);

                double primary = 0.0, alt = 0.0;
                overlays_for_point(point, spec, point.transmit_power, primary, alt);
                res.analytic_primary.push_back(primary);
                res.analytic_alt.push_back(alt);
            }
            catch (const std::exception &e)
            {
                std::ostringstream msg;
                msg << "sweep point " << i << " (x = " << spec.grid[i] << "): " << e.what();
                throw std::runtime_error(msg.str());
            }
        }
        return res;
    }
}
