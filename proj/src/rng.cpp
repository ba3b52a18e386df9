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

#include "starsim/rng.hpp"

#include <cmath>

namespace starsim
{
    namespace
    {
        // Philox round constants (Salmon et al., "Parallel random numbers: as
        // easy as 1, 2, 3").
        constexpr std::uint32_t philox_m0 = 0xD2511F53u;
        constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
        constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
        constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

        inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo)
        {
            std::uint64_t p = std::uint64_t(a) * std::uint64_t(b);
            hi = std::uint32_t(p >> 32);
            lo = std::uint32_t(p);
        }

        inline void philox_round(std::array<std::uint32_t, 4> &ctr, const std::array<std::uint32_t, 2> &key)
        {
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(philox_m0, ctr[0], hi0, lo0);
            mulhilo(philox_m1, ctr[2], hi1, lo1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
    }

    std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4> &counter,
                                            const std::array<std::uint32_t, 2> &key)
    {
        std::array<std::uint32_t, 4> ctr = counter;
        std::array<std::uint32_t, 2> k = key;
        for (int round = 0; round < 10; ++round)
        {
            if (round > 0)
            {
                k[0] += philox_w0;
                k[1] += philox_w1;
            }
            philox_round(ctr, k);
        }
        return ctr;
    }

    std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index)
    {
        return mix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15ull);
    }

    random_stream::random_stream(std::uint64_t key, std::uint64_t stream_id)
        : key_{std::uint32_t(key), std::uint32_t(key >> 32)},
          counter_{0, 0, std::uint32_t(stream_id), std::uint32_t(stream_id >> 32)},
          block_{},
          block_pos_(4),
          cached_normal_(0.0),
          has_cached_normal_(false)
    {
    }

    void random_stream::refill()
    {
        block_ = philox4x32(counter_, key_);
        block_pos_ = 0;
        // 64-bit little-endian increment of the low counter half; the high half
        // carries the stream id and is never touched.
        if (++counter_[0] == 0)
            ++counter_[1];
    }

    std::uint32_t random_stream::next_u32()
    {
        if (block_pos_ >= 4)
            refill();
        return block_[block_pos_++];
    }

    std::uint64_t random_stream::next_u64()
    {
        std::uint64_t lo = next_u32();
        std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    double random_stream::uniform()
    {
        // 53 significant bits, offset to the open interval (0,1).
        return double(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    double random_stream::uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

    double random_stream::normal()
    {
        if (has_cached_normal_)
        {
            has_cached_normal_ = false;
            return cached_normal_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 2.0 * M_PI * u2;
        cached_normal_ = r * std::sin(t);
        has_cached_normal_ = true;
        return r * std::cos(t);
    }

    std::complex<double> random_stream::circular_gaussian(double variance)
    {
        double s = std::sqrt(0.5 * variance);
        double re = normal();
        double im = normal();
        return {s * re, s * im};
    }
}
