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

#ifndef starsim_rng_H
#define starsim_rng_H

#include <array>
#include <complex>
#include <cstdint>

namespace starsim
{
    // Philox-4x32-10 block function: encrypts a 128-bit counter under a 64-bit
    // key. Counter-based generation gives random-access streams, so Monte Carlo
    // trials can be assigned to workers in any order without changing results.
    std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4> &counter,
                                            const std::array<std::uint32_t, 2> &key);

    // 64-bit avalanche mix (splitmix64 finalizer); used to derive stream keys.
    std::uint64_t mix64(std::uint64_t x);

    // Key for the i-th logical substream of a master seed. Substream keys are
    // decorrelated even for adjacent master seeds or indices.
    std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

    // Deterministic random stream identified by (key, stream_id). Two streams
    // with different ids never overlap; identical ids reproduce bit-identically.
    class random_stream
    {
    public:
        random_stream(std::uint64_t key, std::uint64_t stream_id = 0);

        std::uint32_t next_u32(); // next raw 32-bit word
        std::uint64_t next_u64(); // next raw 64-bit word

        double uniform();                               // open interval (0,1)
        double uniform(double lo, double hi);           // open interval (lo,hi)
        double normal();                                // standard normal (Box-Muller, cached pair)
        std::complex<double> circular_gaussian(double variance); // CN(0, variance)

    private:
        void refill();

        std::array<std::uint32_t, 2> key_;
        std::array<std::uint32_t, 4> counter_;
        std::array<std::uint32_t, 4> block_;
        int block_pos_;     // next unread word in block_, 4 = empty
        double cached_normal_;
        bool has_cached_normal_;
    };
}

#endif
