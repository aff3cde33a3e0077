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

#include "rcrb/datagen.hpp"

#include <cmath>

namespace rcrb {

namespace {

    uint64_t splitmix64(uint64_t& x)
    {
        x += 0x9E3779B97F4A7C15ull;
        uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

Xoshiro256ss::Xoshiro256ss(uint64_t seed)
{
    for (auto& word : state_)
        word = splitmix64(seed);
}

uint64_t Xoshiro256ss::next()
{
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

int skew_for_alphabet(uint32_t alphabet_size)
{
    if (alphabet_size == 0)
        throw Error(Errc::invalid_config, "alphabet size must be at least 1");
    int log2_floor = 0;
    while ((alphabet_size >> (log2_floor + 1)) != 0)
        ++log2_floor;
    return log2_floor > 4 ? log2_floor - 4 : 0;
}

double GeometricSpec::ratio() const
{
    return std::exp2(-1.0 / std::exp2(static_cast<double>(skew)));
}

std::vector<double> geometric_pmf(const GeometricSpec& spec)
{
    if (spec.alphabet_size == 0)
        throw Error(Errc::invalid_config, "alphabet size must be at least 1");
    const double p = spec.ratio();
    const double norm = 1.0 - std::pow(p, static_cast<double>(spec.alphabet_size));
    std::vector<double> pmf(spec.alphabet_size);
    double power = 1.0;
    for (uint32_t i = 0; i < spec.alphabet_size; ++i) {
        pmf[i] = (1.0 - p) * power / norm;
        power *= p;
    }
    return pmf;
}

std::vector<uint16_t> gen_geometric(const GeometricSpec& spec, size_t length)
{
    const std::vector<double> pmf = geometric_pmf(spec);
    std::vector<double> cdf(spec.alphabet_size + 1, 0.0);
    for (uint32_t i = 0; i < spec.alphabet_size; ++i)
        cdf[i + 1] = cdf[i] + pmf[i];

    Xoshiro256ss rng(spec.seed);
    std::vector<uint16_t> sequence(length);
    const uint32_t last = spec.alphabet_size - 1;
    for (size_t n = 0; n < length; ++n) {
        const double u = rng.next_unit();
        uint32_t i = 0;
        while (i < last && u >= cdf[i + 1])
            ++i;
        sequence[n] = static_cast<uint16_t>(i);
    }
    return sequence;
}

std::vector<uint16_t> gen_uniform(uint32_t alphabet_size, size_t length, uint64_t seed)
{
    if (alphabet_size == 0 || alphabet_size > 0x10000)
        throw Error(Errc::invalid_config, "alphabet size must be in [1, 65536]");
    Xoshiro256ss rng(seed);
    std::vector<uint16_t> sequence(length);
    for (size_t n = 0; n < length; ++n)
        sequence[n] = static_cast<uint16_t>(rng.next_below(alphabet_size));
    return sequence;
}

double entropy(std::span<const double> pmf)
{
    double h = 0.0;
    for (double p : pmf) {
        if (p > 0.0)
            h -= p * std::log2(p);
    }
    return h;
}

double entropy_of_counts(std::span<const uint64_t> counts)
{
    uint64_t total = 0;
    for (uint64_t c : counts)
        total += c;
    if (total == 0)
        throw Error(Errc::undefined_metric, "entropy of an empty sample is undefined");
    double h = 0.0;
    for (uint64_t c : counts) {
        if (c > 0) {
            const double p = static_cast<double>(c) / static_cast<double>(total);
            h -= p * std::log2(p);
        }
    }
    return h;
}

double bitrate_error_pct(double bitrate, double source_entropy)
{
    if (source_entropy <= 0.0)
        throw Error(Errc::undefined_metric, "bitrate error is undefined for zero entropy");
    return 100.0 * (bitrate - source_entropy) / source_entropy;
}

} // namespace rcrb
