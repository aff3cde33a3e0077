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

#ifndef RCRB_SEARCH_HPP
#define RCRB_SEARCH_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "rcrb/counters.hpp"
#include "rcrb/errors.hpp"

namespace rcrb {

// Direct code-value-to-symbol map. Entry c holds the symbol i whose
// subinterval contains c, i.e. cum[i] <= c < cum[i+1]; symbol i therefore
// appears exactly count(i) times. Storage is allocated once at the maximum
// total count and never grows; used() tracks the prefix currently backed by
// the model.
class DecodeTable {
public:
    explicit DecodeTable(uint32_t capacity)
        : entries_(capacity)
    {
    }

    uint32_t operator[](uint32_t c) const { return entries_[c]; }
    uint32_t used() const { return used_; }
    uint32_t capacity() const { return static_cast<uint32_t>(entries_.size()); }

    void put(uint32_t pos, uint32_t symbol)
    {
        if (pos >= entries_.size())
            throw Error(Errc::capacity_exceeded, "decode table write at " + std::to_string(pos) + " exceeds capacity " + std::to_string(entries_.size()));
        entries_[pos] = symbol;
        if (pos >= used_)
            used_ = pos + 1;
    }

    std::span<const uint32_t> entries() const { return { entries_.data(), used_ }; }

private:
    std::vector<uint32_t> entries_;
    uint32_t used_ = 0;
};

// Builds the full table for a count vector. Symbols with zero count get no
// entries. capacity == 0 allocates exactly the total count.
DecodeTable create_table(std::span<const uint32_t> counts, uint32_t capacity = 0);

// Linear forward search: smallest i with c < cum[i+1]. Touches i+1
// boundaries, so it is cheap when low indices carry most of the mass.
template <class Counters>
uint32_t find_linear(std::span<const uint32_t> cum, uint32_t c, Counters& stats)
{
    const uint32_t alphabet_size = static_cast<uint32_t>(cum.size()) - 1;
    if (c >= cum[alphabet_size])
        throw Error(Errc::corrupt_stream, "code value " + std::to_string(c) + " outside total count " + std::to_string(cum[alphabet_size]));
    uint32_t i = 1;
    for (;; ++i) {
        stats.on_search_step();
        if (c < cum[i])
            break;
    }
    return i - 1;
}

inline uint32_t find_linear(std::span<const uint32_t> cum, uint32_t c)
{
    NoCounters stats;
    return find_linear(cum, c, stats);
}

// Bisection over the interval boundaries; at most floor(log2(K)) + 1 probes.
template <class Counters>
uint32_t find_log(std::span<const uint32_t> cum, uint32_t c, Counters& stats)
{
    const uint32_t alphabet_size = static_cast<uint32_t>(cum.size()) - 1;
    if (c >= cum[alphabet_size])
        throw Error(Errc::corrupt_stream, "code value " + std::to_string(c) + " outside total count " + std::to_string(cum[alphabet_size]));
    uint32_t bottom = 0;
    uint32_t top = alphabet_size;
    do {
        stats.on_search_step();
        const uint32_t mid = (top + bottom) >> 1;
        if (c < cum[mid])
            top = mid;
        else
            bottom = mid + 1;
    } while (top != bottom);
    return bottom - 1;
}

inline uint32_t find_log(std::span<const uint32_t> cum, uint32_t c)
{
    NoCounters stats;
    return find_log(cum, c, stats);
}

// One memory access.
template <class Counters>
uint32_t find_table(const DecodeTable& table, uint32_t c, Counters& stats)
{
    if (c >= table.used())
        throw Error(Errc::corrupt_stream, "code value " + std::to_string(c) + " outside table of " + std::to_string(table.used()) + " entries");
    stats.on_search_step();
    return table[c];
}

inline uint32_t find_table(const DecodeTable& table, uint32_t c)
{
    NoCounters stats;
    return find_table(table, c, stats);
}

// Incremental table maintenance after count(symbol) was incremented by one
// and cum already rebuilt. Only the K - symbol interval boundaries move;
// each lands at cum[j+1] - 1 and takes value j.
template <class Counters>
void update_table_increment(DecodeTable& table, std::span<const uint32_t> cum, uint32_t symbol, Counters& stats)
{
    const uint32_t alphabet_size = static_cast<uint32_t>(cum.size()) - 1;
    if (symbol >= alphabet_size)
        throw Error(Errc::out_of_range, "symbol " + std::to_string(symbol) + " outside alphabet of " + std::to_string(alphabet_size));
    for (uint32_t j = symbol; j < alphabet_size; ++j) {
        table.put(cum[j + 1] - 1, j);
        stats.on_table_write();
    }
}

inline void update_table_increment(DecodeTable& table, std::span<const uint32_t> cum, uint32_t symbol)
{
    NoCounters stats;
    update_table_increment(table, cum, symbol, stats);
}

} // namespace rcrb

#endif
