// SPDX-License-Identifier: Apache-2.0
//
// chanlsp — urban radio channel measurement-to-model toolkit
// Copyright (C) 2026 chanlsp contributors
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

#ifndef chanlsp_rng_H
#define chanlsp_rng_H

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace chanlsp
{

// Seedable generator with pinned algorithms (mt19937_64 core, explicit
// Box-Muller normals), so identical seeds give identical streams on every
// platform. Derived streams (per snapshot, per bin, per bootstrap replicate)
// come from derive(), which mixes the parent seed with a stream index; this
// keeps parallel loops deterministic regardless of scheduling.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t seed() const { return seed_; }

    Rng derive(std::uint64_t stream) const { return Rng(mix(seed_, stream)); }

    std::uint64_t bits() { return eng_(); }

    // Uniform in [0, 1), 53-bit resolution
    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n), n >= 1; masked rejection (no modulo bias)
    std::uint64_t integer(std::uint64_t n)
    {
        if (n <= 1)
            return 0;
        std::uint64_t mask = ~std::uint64_t(0) >> __builtin_clzll(n - 1 | 1);
        std::uint64_t v;
        do
            v = eng_() & mask;
        while (v >= n);
        return v;
    }

    // Standard normal via Box-Muller (two uniforms per draw, no cached spare)
    double normal()
    {
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Circularly-symmetric complex normal with E|z|^2 = 1
    std::complex<double> cnormal()
    {
        double re = normal(), im = normal();
        return {re * M_SQRT1_2, im * M_SQRT1_2};
    }

  private:
    // splitmix64 finalizer over (seed, stream)
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b)
    {
        std::uint64_t z = a + 0x9E3779B97F4A7C15ull * (b + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

} // namespace chanlsp

#endif
