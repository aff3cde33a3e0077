/*
Copyright 2026 The rcrb Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef RCRB_DATAGEN_HPP
#define RCRB_DATAGEN_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rcrb/errors.hpp"

namespace rcrb {

// xoshiro256** seeded through splitmix64; bit-identical output on every
// platform, which is all the reproducibility the generators promise.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(uint64_t seed);

    uint64_t next();

    // Uniform double in [0, 1) with 53 significant bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound) by multiply-shift.
    uint64_t next_below(uint64_t bound)
    {
        return static_cast<uint64_t>((static_cast<__uint128_t>(next()) * bound) >> 64);
    }

private:
    std::array<uint64_t, 4> state_;
};

// Skew parameter for a truncated geometric alphabet of size K:
// max(0, floor(log2 K) - 4).
int skew_for_alphabet(uint32_t alphabet_size);

// Truncated geometric source: p(i) = (1-p) p^i / (1 - p^K) with
// p = 2^(-1 / 2^skew).
struct GeometricSpec {
    uint32_t alphabet_size = 2;
    int skew = 0;
    uint64_t seed = 0;

    double ratio() const; // p
};

std::vector<double> geometric_pmf(const GeometricSpec& spec);

// Inverse-CDF sampling with a linear scan over the cumulative probabilities.
std::vector<uint16_t> gen_geometric(const GeometricSpec& spec, size_t length);

std::vector<uint16_t> gen_uniform(uint32_t alphabet_size, size_t length, uint64_t seed);

// Shannon entropy in bits per symbol; zero-probability terms contribute 0.
double entropy(std::span<const double> pmf);
double entropy_of_counts(std::span<const uint64_t> counts);

// Percentage excess of an achieved bitrate over the source entropy:
// 100 * (R - H) / H.
double bitrate_error_pct(double bitrate, double source_entropy);

} // namespace rcrb

#endif
