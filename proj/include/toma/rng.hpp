// SPDX-License-Identifier: Apache-2.0
//
// toma - towed movable antenna array simulator
// Copyright (C) 2026 The toma authors
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

#ifndef TOMA_RNG_HPP
#define TOMA_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace toma
{
    // Reproducible random source.
    //
    // The engine is std::mt19937_64, whose output sequence is fixed by the C++
    // standard. The standard library distributions are implementation-defined,
    // so the conversions to uniform and Gaussian variates are done here:
    //   uniform  : top 53 bits of one engine draw, scaled to [0, 1)
    //   normal   : Box-Muller on two uniforms, both outputs used in turn
    //   substream: seed = splitmix64(seed ^ splitmix64(stream id))
    // This keeps every output identical across compilers and platforms.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

        std::uint64_t seed() const { return seed_; }

        std::uint64_t next_u64() { return engine_(); }

        double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

        // Unbiased integer in [0, n).
        std::uint64_t index(std::uint64_t n)
        {
            const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
            std::uint64_t x = engine_();
            while (x >= limit)
                x = engine_();
            return x % n;
        }

        double normal()
        {
            if (has_spare_)
            {
                has_spare_ = false;
                return spare_;
            }
            double u1 = uniform();
            while (u1 <= 0.0)
                u1 = uniform();
            const double u2 = uniform();
            const double radius = std::sqrt(-2.0 * std::log(u1));
            const double angle = 2.0 * std::numbers::pi * u2;
            spare_ = radius * std::sin(angle);
            has_spare_ = true;
            return radius * std::cos(angle);
        }

        // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
        std::complex<double> complex_normal(double variance = 1.0)
        {
            const double s = std::sqrt(variance / 2.0);
            const double re = normal();
            const double im = normal();
            return {s * re, s * im};
        }

        // Independent generator for a named sub-experiment.
        Rng substream(std::uint64_t stream_id) const { return Rng(derive_seed(seed_, stream_id)); }

        static std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ULL;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
            return x ^ (x >> 31);
        }

        static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id)
        {
            return splitmix64(seed ^ splitmix64(stream_id));
        }

    private:
        std::uint64_t seed_;
        std::mt19937_64 engine_;
        double spare_ = 0.0;
        bool has_spare_ = false;
    };
}

#endif
