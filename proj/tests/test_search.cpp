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

#include <doctest.h>

#include "rcrb/datagen.hpp"
#include "rcrb/models.hpp"
#include "rcrb/search.hpp"

using namespace rcrb;

namespace {

const std::vector<uint32_t> toy_cum { 0, 2, 5, 6, 10 };
const std::vector<uint32_t> toy_counts { 2, 3, 1, 4 };

std::vector<uint32_t> random_counts(Xoshiro256ss& rng, uint32_t alphabet, uint32_t max_count, bool allow_zero)
{
    std::vector<uint32_t> counts(alphabet);
    for (auto& c : counts)
        c = static_cast<uint32_t>(rng.next_below(max_count)) + (allow_zero ? 0 : 1);
    return counts;
}

} // namespace

TEST_SUITE_BEGIN("search");

TEST_CASE("linear forward search")
{
    CHECK(find_linear(toy_cum, 5) == 2);
    CHECK(find_linear(toy_cum, 0) == 0);
    CHECK(find_linear(toy_cum, 9) == 3);
    CHECK_THROWS_AS(find_linear(toy_cum, 10), Error);
}

TEST_CASE("logarithmic search")
{
    CHECK(find_log(toy_cum, 5) == 2);
    const std::vector<uint32_t> single { 0, 1 };
    CHECK(find_log(single, 0) == 0);
    CHECK_THROWS_AS(find_log(toy_cum, 12), Error);
}

TEST_CASE("table creation")
{
    const DecodeTable table = create_table(toy_counts);
    const std::vector<uint32_t> expected { 0, 0, 1, 1, 1, 2, 3, 3, 3, 3 };
    REQUIRE(table.used() == expected.size());
    for (uint32_t c = 0; c < expected.size(); ++c)
        CHECK(table[c] == expected[c]);

    const DecodeTable one = create_table(std::vector<uint32_t> { 1 });
    REQUIRE(one.used() == 1);
    CHECK(one[0] == 0);

    const DecodeTable gap = create_table(std::vector<uint32_t> { 0, 5 });
    REQUIRE(gap.used() == 5);
    for (uint32_t c = 0; c < 5; ++c)
        CHECK(gap[c] == 1);
}

TEST_CASE("table lookup")
{
    const DecodeTable table = create_table(toy_counts);
    CHECK(find_table(table, 6) == 3);
    CHECK(find_table(table, 0) == 0);
    CHECK_THROWS_AS(find_table(table, 10), Error);

    AccessCounters stats;
    find_table(table, 4, stats);
    CHECK(stats.search_steps == 1); // exactly one access
}

TEST_CASE("incremental table update after one increment")
{
    // counts (2,3,1,4), then one more occurrence of symbol 1
    DecodeTable table = create_table(toy_counts, 32);
    FrequencyModel model = FrequencyModel::from_counts(toy_counts);
    model.update(1);
    AccessCounters stats;
    update_table_increment(table, model.cum_counts(), 1, stats);

    const std::vector<uint32_t> expected { 0, 0, 1, 1, 1, 1, 2, 3, 3, 3, 3 };
    REQUIRE(table.used() == expected.size());
    for (uint32_t c = 0; c < expected.size(); ++c)
        CHECK(table[c] == expected[c]);
    CHECK(stats.table_writes == 3); // boundaries at c = 5, 6 and 10
}

TEST_CASE("incrementing the last symbol touches a single entry")
{
    DecodeTable table = create_table(toy_counts, 32);
    FrequencyModel model = FrequencyModel::from_counts(toy_counts);
    model.update(3);
    AccessCounters stats;
    update_table_increment(table, model.cum_counts(), 3, stats);
    CHECK(stats.table_writes == 1);
    CHECK(table.used() == 11);
    CHECK(table[10] == 3);
}

TEST_CASE("incremental updates equal a full rebuild at every step")
{
    Xoshiro256ss rng(31);
    FrequencyModel model(6, 4096);
    DecodeTable table = create_table(model.counts(), 4096);
    for (int step = 0; step < 1000; ++step) {
        const auto symbol = static_cast<uint32_t>(rng.next_below(6));
        model.update(symbol);
        update_table_increment(table, model.cum_counts(), symbol);
        const DecodeTable rebuilt = create_table(model.counts());
        REQUIRE(table.used() == rebuilt.used());
        for (uint32_t c = 0; c < rebuilt.used(); ++c)
            REQUIRE(table[c] == rebuilt[c]);
    }
}

TEST_CASE("table writes past the allocation are rejected")
{
    DecodeTable table = create_table(toy_counts, 10); // full already
    FrequencyModel model = FrequencyModel::from_counts(toy_counts);
    model.update(2);
    CHECK_THROWS_AS(update_table_increment(table, model.cum_counts(), 2), Error);
}

TEST_CASE("all three strategies agree on every code value")
{
    Xoshiro256ss rng(777);
    for (int round = 0; round < 30; ++round) {
        const uint32_t alphabet = 1 + static_cast<uint32_t>(rng.next_below(40));
        const bool allow_zero = round % 3 == 0 && alphabet > 1;
        std::vector<uint32_t> counts = random_counts(rng, alphabet, 12, allow_zero);
        uint64_t total = 0;
        for (uint32_t c : counts)
            total += c;
        if (total == 0)
            counts[0] = 1, total = 1;

        std::vector<uint32_t> cum(alphabet + 1, 0);
        for (uint32_t i = 0; i < alphabet; ++i)
            cum[i + 1] = cum[i] + counts[i];
        const DecodeTable table = create_table(counts);

        for (uint32_t c = 0; c < total; ++c) {
            const uint32_t expected = find_linear(cum, c);
            CHECK(find_log(cum, c) == expected);
            CHECK(find_table(table, c) == expected);
            CHECK(cum[expected] <= c);
            CHECK(c < cum[expected + 1]);
        }
    }
}

TEST_CASE("search step counts respect their contracts")
{
    Xoshiro256ss rng(12);
    const uint32_t alphabet = 37;
    const std::vector<uint32_t> counts = random_counts(rng, alphabet, 20, false);
    std::vector<uint32_t> cum(alphabet + 1, 0);
    for (uint32_t i = 0; i < alphabet; ++i)
        cum[i + 1] = cum[i] + counts[i];

    uint32_t log_budget = 1;
    while ((1u << log_budget) < alphabet)
        ++log_budget;
    ++log_budget; // floor(log2 K) + 1 probes at most

    for (int probe = 0; probe < 3000; ++probe) {
        const auto c = static_cast<uint32_t>(rng.next_below(cum[alphabet]));

        AccessCounters fwd_stats;
        const uint32_t symbol = find_linear(cum, c, fwd_stats);
        CHECK(fwd_stats.search_steps == symbol + 1);
        CHECK(fwd_stats.search_steps <= alphabet);

        AccessCounters log_stats;
        find_log(cum, c, log_stats);
        CHECK(log_stats.search_steps <= log_budget);
    }
}

TEST_SUITE_END();
