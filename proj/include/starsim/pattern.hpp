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

#ifndef starsim_pattern_H
#define starsim_pattern_H

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "starsim/scenario.hpp"

namespace starsim
{
    // Uniform planar array in the azimuth cut. Rows are perpendicular to the
    // cut plane and add coherently; columns create the azimuth array factor.
    struct array_geometry
    {
        std::size_t rows = 18;
        std::size_t cols = 18;
        double spacing = 0.5; // element pitch in wavelengths

        std::size_t elements() const { return rows * cols; }
    };

    // Angle grid over [0, 360) degrees with linear field magnitude per angle.
    // Convention: angles with cos(theta) > 0 (i.e. (-90, 90)) form the
    // reflection (side A) half-space, cos(theta) < 0 the transmission (side
    // B) half-space; 90/270 degrees lie in the array plane where the planar
    // kernel is the all-ones vector.
    struct angular_pattern
    {
        std::vector<double> angles_deg;
        std::vector<double> magnitude;

        double peak() const;                        // max magnitude
        double peak_angle_deg() const;              // angle of max magnitude
        // Max magnitude restricted to [lo, hi) degrees (wrapping allowed).
        double peak_in_range(double lo_deg, double hi_deg) const;
        double peak_angle_in_range(double lo_deg, double hi_deg) const;
    };

    enum class pattern_config
    {
        active_coupled,
        active_independent,
        passive_lossless
    };

    // Far-field per-element phase factors exp(j*2*pi*spacing*col*cos(theta))
    // for an azimuth angle theta in degrees; unit magnitude, length
    // rows*cols, column-major within a row so (row r, col c) sits at index
    // r*cols + c. Broadside (90 or 270 degrees) gives the all-ones vector.
    std::vector<std::complex<double>> steering_vector(const array_geometry &geometry,
                                                      double angle_deg);

    // Spherical-wave variant: exact path-length phases from a probe at the
    // given radius (in wavelengths) instead of the planar approximation.
    std::vector<std::complex<double>> steering_vector_spherical(const array_geometry &geometry,
                                                                double angle_deg,
                                                                double radius_wavelengths);

    struct side_patterns
    {
        angular_pattern reflection;   // radiated with the side-A coefficients
        angular_pattern transmission; // radiated with the side-B coefficients
    };

    struct pattern_options
    {
        double grid_step_deg = 0.25;
        // Coupled hardware slaves the transmission phase to the reflection
        // phase; behind independently faded channels the residual transmission
        // phases are uniform, reproduced here by a seeded uniform draw.
        std::uint64_t transmission_phase_seed = 2024;
        // Spherical-wave probe radius (wavelengths); planar far field if unset.
        std::optional<double> probe_radius_wavelengths;
    };

    // Array factors of both sides for a surface steered at users at
    // (theta_a, theta_b). theta_a must lie in the reflection half-space and
    // theta_b in the transmission half-space (throws std::invalid_argument
    // otherwise). The per-amplifier amplitude G0 is read off the scenario's
    // element configuration (coupled: |gain|; independent: rms of |g2|,|g3|;
    // passive: 1) and split per config_kind: coupled G0/2 per side,
    // independent G0/sqrt(2) per side (equal quadrature split), passive
    // 1/sqrt(2). config_kind also selects which side phases are steerable.
    side_patterns radiation_pattern(const array_geometry &geometry, const scenario &sc,
                                    double theta_a_deg, double theta_b_deg,
                                    pattern_config config_kind,
                                    const pattern_options &options = {});
}

#endif
