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
//
// mc_bench: times the OpenMP Monte Carlo kernels against the serial
// reference implementation on one outage and one mean-SNR workload, and
// verifies that the two policies produce bit-identical estimates (they
// share the per-trial counter-based randomness but nothing else).
//
//   mc_bench [trials] [m_elements]

#include "starsim/mc.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace
{
    starsim::scenario bench_scenario(std::size_t m)
    {
        using namespace starsim;
        scenario sc;
        sc.m_elements = m;
        sc.element = coupled_config{complex_gain(amplitude_from_db(1.5), 0.0), 2};
        const double k = db_to_linear(1.5);
        const double omega = std::pow(10.0, -2.2);
        sc.bs_link = rician_params(k, omega);
        sc.user_a_link = rician_params(k, omega);
        sc.user_b_link = rician_params(k, omega);
        sc.element_noise_power = dbm_to_watts(-20.0);
        sc.user_noise_power_a = dbm_to_watts(-10.0);
        sc.user_noise_power_b = dbm_to_watts(-10.0);
        sc.transmit_power = 1.0;
        return sc;
    }

    template <typename F> double time_seconds(F &&f)
    {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    bool identical(const starsim::estimate &a, const starsim::estimate &b)
    {
        return a.value == b.value && a.std_error == b.std_error && a.ci_low == b.ci_low &&
               a.ci_high == b.ci_high && a.trials_used == b.trials_used &&
               a.events == b.events && a.unresolved == b.unresolved;
    }
}

int main(int argc, char **argv)
{
    using namespace starsim;
    const std::uint64_t trials = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
    const std::size_t m = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 64;

    const scenario sc = bench_scenario(m);
    mc_config cfg;
    cfg.trials = trials;
    cfg.master_seed = 7;

    int threads = 1;
#ifdef _OPENMP
#pragma omp parallel
#pragma omp single
    threads = omp_get_num_threads();
#endif
    std::printf("mc_bench: %llu trials, M = %zu, %d OpenMP thread(s)\n",
                static_cast<unsigned long long>(trials), m, threads);
    std::printf("%-10s %12s %12s %9s %10s\n", "metric", "serial [s]", "openmp [s]",
                "speedup", "identical");

    const outage_query q(db_to_linear(0.0), sc.transmit_power);
    estimate out_serial, out_openmp, snr_serial, snr_openmp;
    const double t_out_serial = time_seconds([&] {
        out_serial = estimate_outage(sc, q, align_target::user_a, user::b, cfg,
                                     exec_policy::serial_reference);
    });
    const double t_out_openmp = time_seconds([&] {
        out_openmp =
            estimate_outage(sc, q, align_target::user_a, user::b, cfg, exec_policy::openmp);
    });
    const bool out_same = identical(out_serial, out_openmp);
    std::printf("%-10s %12.3f %12.3f %8.2fx %10s\n", "outage", t_out_serial, t_out_openmp,
                t_out_serial / t_out_openmp, out_same ? "yes" : "NO");

    const double t_snr_serial = time_seconds([&] {
        snr_serial = estimate_mean_snr(sc, align_target::user_a, user::a, cfg,
                                       exec_policy::serial_reference);
    });
    const double t_snr_openmp = time_seconds([&] {
        snr_openmp =
            estimate_mean_snr(sc, align_target::user_a, user::a, cfg, exec_policy::openmp);
    });
    const bool snr_same = identical(snr_serial, snr_openmp);
    std::printf("%-10s %12.3f %12.3f %8.2fx %10s\n", "mean_snr", t_snr_serial, t_snr_openmp,
                t_snr_serial / t_snr_openmp, snr_same ? "yes" : "NO");

    if (!out_same || !snr_same)
    {
        std::fprintf(stderr, "mc_bench: policies disagree — determinism bug\n");
        return 1;
    }
    return 0;
}
