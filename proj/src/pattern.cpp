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

#include "starsim/pattern.hpp"

#include "starsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace starsim
{
    namespace
    {
        double wrap_deg(double a)
        {
            double w = std::fmod(a, 360.0);
            if (w < 0.0)
                w += 360.0;
            return w;
        }

        bool in_range_deg(double a, double lo, double hi)
        {
            a = wrap_deg(a);
            lo = wrap_deg(lo);
            hi = wrap_deg(hi);
            return lo <= hi ? (a >= lo && a < hi) : (a >= lo || a < hi);
        }
    }

    double angular_pattern::peak() const
    {
        double m = 0.0;
        for (double v : magnitude)
            m = std::max(m, v);
        return m;
    }

    double angular_pattern::peak_angle_deg() const
    {
        double m = -1.0, angle = 0.0;
        for (std::size_t i = 0; i < magnitude.size(); ++i)
            if (magnitude[i] > m)
            {
                m = magnitude[i];
                angle = angles_deg[i];
            }
        return angle;
    }

    double angular_pattern::peak_in_range(double lo_deg, double hi_deg) const
    {
        double m = 0.0;
        for (std::size_t i = 0; i < magnitude.size(); ++i)
            if (in_range_deg(angles_deg[i], lo_deg, hi_deg))
                m = std::max(m, magnitude[i]);
        return m;
    }

    double angular_pattern::peak_angle_in_range(double lo_deg, double hi_deg) const
    {
        double m = -1.0, angle = 0.0;
        for (std::size_t i = 0; i < magnitude.size(); ++i)
            if (in_range_deg(angles_deg[i], lo_deg, hi_deg) && magnitude[i] > m)
            {
                m = magnitude[i];
                angle = angles_deg[i];
            }
        return angle;
    }

    std::vector<std::complex<double>> steering_vector(const array_geometry &geometry,
                                                      double angle_deg)
    {
        const double u = std::cos(angle_deg * M_PI / 180.0);
        std::vector<std::complex<double>> a(geometry.elements());
        for (std::size_t r = 0; r < geometry.rows; ++r)
            for (std::size_t c = 0; c < geometry.cols; ++c)
                a[r * geometry.cols + c] =
                    std::polar(1.0, 2.0 * M_PI * geometry.spacing * double(c) * u);
        return a;
    }

    std::vector<std::complex<double>> steering_vector_spherical(const array_geometry &geometry,
                                                                double angle_deg,
                                                                double radius_wavelengths)
    {
        if (!(radius_wavelengths > 0.0))
            throw std::invalid_argument("steering_vector_spherical: radius must be > 0");
        const double th = angle_deg * M_PI / 180.0;
        const double px = radius_wavelengths * std::cos(th);
        const double py = radius_wavelengths * std::sin(th);
        std::vector<std::complex<double>> a(geometry.elements());
        const double x0 = 0.5 * double(geometry.cols - 1);
        const double z0 = 0.5 * double(geometry.rows - 1);
        for (std::size_t r = 0; r < geometry.rows; ++r)
            for (std::size_t c = 0; c < geometry.cols; ++c)
            {
                // Columns along x, rows along z, probe in the x-y plane.
                const double x = geometry.spacing * (double(c) - x0);
                const double z = geometry.spacing * (double(r) - z0);
                const double d = std::sqrt((px - x) * (px - x) + py * py + z * z);
                a[r * geometry.cols + c] =
                    std::polar(1.0, 2.0 * M_PI * (radius_wavelengths - d));
            }
        return a;
    }

    namespace
    {
        std::vector<std::complex<double>> probe_vector(const array_geometry &g, double angle,
                                                       const pattern_options &opt)
        {
            if (opt.probe_radius_wavelengths)
                return steering_vector_spherical(g, angle, *opt.probe_radius_wavelengths);
            return steering_vector(g, angle);
        }

        // Weights that steer amplitude amp toward angle_deg: conjugate-phase
        // match against the same propagation kernel used for evaluation.
        std::vector<std::complex<double>> steered_weights(const array_geometry &g,
                                                          double angle_deg, double amp,
                                                          const pattern_options &opt)
        {
            auto a = probe_vector(g, angle_deg, opt);
            for (auto &v : a)
                v = amp * std::conj(v) / std::abs(v);
            return a;
        }

        std::vector<std::complex<double>> random_phase_weights(const array_geometry &g,
                                                               double amp, std::uint64_t seed)
        {
            random_stream rng(seed);
            std::vector<std::complex<double>> w(g.elements());
            for (auto &v : w)
                v = std::polar(amp, rng.uniform(0.0, 2.0 * M_PI));
            return w;
        }

        angular_pattern evaluate(const array_geometry &g,
                                 const std::vector<std::complex<double>> &weights,
                                 const pattern_options &opt)
        {
            angular_pattern p;
            const double step = opt.grid_step_deg;
            if (!(step > 0.0))
                throw std::invalid_argument("pattern_options: grid_step_deg must be > 0");
            const std::size_t n = std::size_t(std::ceil(360.0 / step));
            p.angles_deg.resize(n);
            p.magnitude.resize(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                const double angle = double(i) * step;
                const auto a = probe_vector(g, angle, opt);
                std::complex<double> af(0.0, 0.0);
                for (std::size_t m = 0; m < weights.size(); ++m)
                    af += weights[m] * a[m];
                p.angles_deg[i] = angle;
                p.magnitude[i] = std::abs(af);
            }
            return p;
        }

        double amplifier_amplitude(const element_config &config)
        {
            if (const auto *c = std::get_if<coupled_config>(&config))
                return c->gain.amplitude;
            if (const auto *ic = std::get_if<independent_config>(&config))
                return std::sqrt(0.5 * (std::norm(ic->g2.value()) + std::norm(ic->g3.value())));
            return 1.0;
        }
    }

    side_patterns radiation_pattern(const array_geometry &geometry, const scenario &sc,
                                    double theta_a_deg, double theta_b_deg,
                                    pattern_config config_kind, const pattern_options &options)
    {
        const double cos_a = std::cos(theta_a_deg * M_PI / 180.0);
        const double cos_b = std::cos(theta_b_deg * M_PI / 180.0);
        if (!(cos_a > 0.0))
            throw std::invalid_argument("radiation_pattern: theta_a must lie in the "
                                        "reflection half-space (cos > 0)");
        if (!(cos_b < 0.0))
            throw std::invalid_argument("radiation_pattern: theta_b must lie in the "
                                        "transmission half-space (cos < 0)");

        const double g0 = amplifier_amplitude(sc.element);
        double amp_a = 0.0, amp_b = 0.0;
        bool transmission_steerable = true;
        switch (config_kind)
        {
        case pattern_config::active_coupled:
            amp_a = amp_b = g0 / 2.0;
            transmission_steerable = false;
            break;
        case pattern_config::active_independent:
            amp_a = amp_b = g0 / std::sqrt(2.0);
            break;
        case pattern_config::passive_lossless:
            amp_a = amp_b = 1.0 / std::sqrt(2.0);
            break;
        }

        side_patterns sp;
        sp.reflection =
            evaluate(geometry, steered_weights(geometry, theta_a_deg, amp_a, options), options);
        if (transmission_steerable)
            sp.transmission = evaluate(
                geometry, steered_weights(geometry, theta_b_deg, amp_b, options), options);
        else
            sp.transmission = evaluate(
                geometry,
                random_phase_weights(geometry, amp_b, options.transmission_phase_seed),
                options);
        return sp;
    }
}
