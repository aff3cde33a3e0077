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

#ifndef RCRB_MODELS_HPP
#define RCRB_MODELS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcrb/counters.hpp"
#include "rcrb/errors.hpp"
#include "rcrb/search.hpp"

namespace rcrb {

// Default ceiling for the total count of adaptive models.
inline constexpr uint32_t default_max_total = 1u << 12;

// Largest total count any model may reach; keeps every count in 32 bits and
// every range-coder intermediate product in 64 bits.
inline constexpr uint32_t max_total_limit = 1u << 16;

inline bool is_power_of_two(uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

// Symbol statistics as an array of cumulative counts:
//   cum[0] == 0, cum[i+1] == cum[i] + count(i), cum[K] == total.
// Updates run in O(K - symbol); once the total reaches max_total every count
// is halved (never below 1) before the next increment.
class FrequencyModel {
public:
    FrequencyModel(uint32_t alphabet_size, uint32_t max_total = default_max_total)
        : max_total_(max_total)
    {
        validate_limits(alphabet_size, max_total);
        cum_.resize(alphabet_size + 1);
        for (uint32_t i = 0; i <= alphabet_size; ++i)
            cum_[i] = i;
    }

    // Builds a model over fixed counts. Unlike the adaptive constructor the
    // alphabet may be larger than max_total; only the total is bounded.
    static FrequencyModel from_counts(std::span<const uint32_t> counts, uint32_t max_total = default_max_total)
    {
        if (counts.empty())
            throw Error(Errc::invalid_config, "alphabet size must be at least 1");
        if (!is_power_of_two(max_total) || max_total > max_total_limit)
            throw Error(Errc::invalid_config, "max total must be a power of two not above " + std::to_string(max_total_limit));
        FrequencyModel model(raw_tag{}, max_total);
        model.cum_.resize(counts.size() + 1);
        model.cum_[0] = 0;
        uint64_t running = 0;
        for (size_t i = 0; i < counts.size(); ++i) {
            running += counts[i];
            if (running > max_total_limit)
                throw Error(Errc::invalid_config, "total count exceeds " + std::to_string(max_total_limit));
            model.cum_[i + 1] = static_cast<uint32_t>(running);
        }
        return model;
    }

    uint32_t alphabet_size() const { return static_cast<uint32_t>(cum_.size()) - 1; }
    uint32_t max_total() const { return max_total_; }
    uint32_t total() const { return cum_.back(); }
    uint32_t cum(uint32_t i) const { return cum_[i]; }
    uint32_t count(uint32_t i) const { return cum_[i + 1] - cum_[i]; }
    std::span<const uint32_t> cum_counts() const { return cum_; }

    std::vector<uint32_t> counts() const
    {
        std::vector<uint32_t> h(alphabet_size());
        for (uint32_t i = 0; i < h.size(); ++i)
            h[i] = cum_[i + 1] - cum_[i];
        return h;
    }

    // Counts one occurrence of `symbol`. Returns true when a rescale ran
    // first, so table-based callers know to rebuild instead of patching.
    template <class Counters>
    bool update(uint32_t symbol, Counters& stats)
    {
        const uint32_t alphabet = alphabet_size();
        if (symbol >= alphabet)
            throw Error(Errc::out_of_range, "symbol " + std::to_string(symbol) + " outside alphabet of " + std::to_string(alphabet));
        bool rescaled = false;
        if (cum_[alphabet] >= max_total_) {
            rescale(stats);
            rescaled = true;
            if (cum_[alphabet] >= max_total_)
                throw Error(Errc::invariant_violation, "rescale left no headroom below max_total");
        }
        for (uint32_t j = symbol + 1; j <= alphabet; ++j) {
            ++cum_[j];
            stats.on_cum_write();
        }
        return rescaled;
    }

    bool update(uint32_t symbol)
    {
        NoCounters stats;
        return update(symbol, stats);
    }

    // Halves every count, clamping at 1 so no symbol loses its interval.
    template <class Counters>
    void rescale(Counters& stats)
    {
        const uint32_t alphabet = alphabet_size();
        uint32_t prev_bound = cum_[0];
        uint32_t running = 0;
        for (uint32_t i = 0; i < alphabet; ++i) {
            const uint32_t h = cum_[i + 1] - prev_bound;
            prev_bound = cum_[i + 1];
            running += std::max<uint32_t>(1, h >> 1);
            cum_[i + 1] = running;
            stats.on_cum_write();
        }
    }

    void rescale()
    {
        NoCounters stats;
        rescale(stats);
    }

private:
    struct raw_tag {};
    FrequencyModel(raw_tag, uint32_t max_total)
        : max_total_(max_total)
    {
    }

    static void validate_limits(uint32_t alphabet_size, uint32_t max_total)
    {
        if (alphabet_size == 0)
            throw Error(Errc::invalid_config, "alphabet size must be at least 1");
        if (!is_power_of_two(max_total) || max_total > max_total_limit)
            throw Error(Errc::invalid_config, "max total must be a power of two not above " + std::to_string(max_total_limit));
        if (alphabet_size > max_total)
            throw Error(Errc::invalid_config, "alphabet size " + std::to_string(alphabet_size) + " exceeds max total " + std::to_string(max_total));
    }

    uint32_t max_total_;
    std::vector<uint32_t> cum_;
};

// The same statistic stored as a binary-indexed tree: point updates and
// prefix sums in O(log K) at the price of indirect access to every cum
// value. Mirrors FrequencyModel's update/rescale policy exactly, so both
// representations drive the coder to identical output.
class FenwickModel {
public:
    FenwickModel(uint32_t alphabet_size, uint32_t max_total = default_max_total)
        : FenwickModel(std::vector<uint32_t>(alphabet_size, 1), max_total)
    {
    }

    static FenwickModel from_counts(std::span<const uint32_t> counts, uint32_t max_total = default_max_total)
    {
        return FenwickModel(std::vector<uint32_t>(counts.begin(), counts.end()), max_total);
    }

    uint32_t alphabet_size() const { return alphabet_; }
    uint32_t max_total() const { return max_total_; }
    uint32_t total() const { return total_; }

    // h_k[i] for i in [0, K].
    uint32_t prefix_sum(uint32_t i) const
    {
        if (i > alphabet_)
            throw Error(Errc::out_of_range, "prefix index " + std::to_string(i) + " above alphabet size " + std::to_string(alphabet_));
        uint32_t sum = 0;
        for (; i != 0; i &= i - 1)
            sum += tree_[i];
        return sum;
    }

    uint32_t count(uint32_t i) const { return prefix_sum(i + 1) - prefix_sum(i); }

    // Point update count(symbol) += delta. A negative delta may not drop a
    // count below 1; adaptive coding relies on every symbol keeping width.
    template <class Counters>
    void add(uint32_t symbol, int32_t delta, Counters& stats)
    {
        if (symbol >= alphabet_)
            throw Error(Errc::out_of_range, "symbol " + std::to_string(symbol) + " outside alphabet of " + std::to_string(alphabet_));
        if (delta == 0)
            return;
        if (delta < 0 && static_cast<int64_t>(count(symbol)) + delta < 1)
            throw Error(Errc::invariant_violation, "count of symbol " + std::to_string(symbol) + " would drop below 1");
        for (uint32_t j = symbol + 1; j <= alphabet_; j += j & (0u - j)) {
            tree_[j] = static_cast<uint32_t>(static_cast<int64_t>(tree_[j]) + delta);
            stats.on_cum_write();
        }
        total_ = static_cast<uint32_t>(static_cast<int64_t>(total_) + delta);
    }

    void add(uint32_t symbol, int32_t delta)
    {
        NoCounters stats;
        add(symbol, delta, stats);
    }

    // Adaptive increment with the same rescale trigger as FrequencyModel.
    template <class Counters>
    bool update(uint32_t symbol, Counters& stats)
    {
        if (symbol >= alphabet_)
            throw Error(Errc::out_of_range, "symbol " + std::to_string(symbol) + " outside alphabet of " + std::to_string(alphabet_));
        bool rescaled = false;
        if (total_ >= max_total_) {
            rescale(stats);
            rescaled = true;
            if (total_ >= max_total_)
                throw Error(Errc::invariant_violation, "rescale left no headroom below max_total");
        }
        add(symbol, 1, stats);
        return rescaled;
    }

    bool update(uint32_t symbol)
    {
        NoCounters stats;
        return update(symbol, stats);
    }

    // Descent from the highest tree level: largest i with h_k[i] <= c.
    template <class Counters>
    uint32_t find_symbol(uint32_t c, Counters& stats) const
    {
        if (c >= total_)
            throw Error(Errc::out_of_range, "code value " + std::to_string(c) + " outside total count " + std::to_string(total_));
        uint32_t pos = 0;
        uint32_t rest = c;
        for (uint32_t bit = top_bit_; bit != 0; bit >>= 1) {
            const uint32_t next = pos + bit;
            stats.on_search_step();
            if (next <= alphabet_ && tree_[next] <= rest) {
                rest -= tree_[next];
                pos = next;
            }
        }
        return pos;
    }

    uint32_t find_symbol(uint32_t c) const
    {
        NoCounters stats;
        return find_symbol(c, stats);
    }

    template <class Counters>
    void rescale(Counters& stats)
    {
        std::vector<uint32_t> h = counts();
        for (uint32_t& c : h)
            c = std::max<uint32_t>(1, c >> 1);
        rebuild(h, stats);
    }

    void rescale()
    {
        NoCounters stats;
        rescale(stats);
    }

    std::vector<uint32_t> counts() const
    {
        std::vector<uint32_t> h(alphabet_);
        uint32_t prev = 0;
        for (uint32_t i = 0; i < alphabet_; ++i) {
            const uint32_t next = prefix_sum(i + 1);
            h[i] = next - prev;
            prev = next;
        }
        return h;
    }

private:
    FenwickModel(std::vector<uint32_t> counts, uint32_t max_total)
        : alphabet_(static_cast<uint32_t>(counts.size()))
        , max_total_(max_total)
    {
        if (alphabet_ == 0)
            throw Error(Errc::invalid_config, "alphabet size must be at least 1");
        if (!is_power_of_two(max_total) || max_total > max_total_limit)
            throw Error(Errc::invalid_config, "max total must be a power of two not above " + std::to_string(max_total_limit));
        top_bit_ = 1;
        while ((top_bit_ << 1) <= alphabet_)
            top_bit_ <<= 1;
        NoCounters stats;
        rebuild(counts, stats);
        if (total_ > max_total_)
            throw Error(Errc::invalid_config, "initial total " + std::to_string(total_) + " exceeds max total " + std::to_string(max_total_));
    }

    template <class Counters>
    void rebuild(std::span<const uint32_t> counts, Counters& stats)
    {
        tree_.assign(alphabet_ + 1, 0);
        uint64_t sum = 0;
        for (uint32_t i = 1; i <= alphabet_; ++i) {
            tree_[i] += counts[i - 1];
            sum += counts[i - 1];
            const uint32_t parent = i + (i & (0u - i));
            if (parent <= alphabet_)
                tree_[parent] += tree_[i];
            stats.on_cum_write();
        }
        if (sum > max_total_limit)
            throw Error(Errc::invalid_config, "total count exceeds " + std::to_string(max_total_limit));
        total_ = static_cast<uint32_t>(sum);
    }

    uint32_t alphabet_;
    uint32_t max_total_;
    uint32_t total_ = 0;
    uint32_t top_bit_ = 1;
    std::vector<uint32_t> tree_; // 1-based binary-indexed layout
};

// Finite-window statistic: each symbol's count is 1 plus its number of
// occurrences among the last (target_total - K) processed symbols. The
// window is a ring buffer primed with the non-symbol sentinel K, so the
// total grows by one per update until it reaches target_total (a power of
// two) and stays there; from that point on the coder core may replace its
// division by a shift. An update touches only the cum entries between the
// incoming and the evicted symbol, and maintains the optional decode table
// in the same loop.
class RingModel {
public:
    RingModel(uint32_t alphabet_size, uint32_t target_total, bool with_table)
        : target_total_(target_total)
    {
        if (alphabet_size == 0)
            throw Error(Errc::invalid_config, "alphabet size must be at least 1");
        if (!is_power_of_two(target_total) || target_total > max_total_limit)
            throw Error(Errc::invalid_config, "target total must be a power of two not above " + std::to_string(max_total_limit));
        if (target_total <= alphabet_size)
            throw Error(Errc::invalid_config, "target total " + std::to_string(target_total) + " leaves no window beyond alphabet size " + std::to_string(alphabet_size));
        cum_.resize(alphabet_size + 1);
        for (uint32_t i = 0; i <= alphabet_size; ++i)
            cum_[i] = i;
        window_.assign(target_total - alphabet_size, alphabet_size);
        if (with_table) {
            table_.emplace(target_total);
            for (uint32_t i = 0; i < alphabet_size; ++i)
                table_->put(i, i);
        }
    }

    // Resumes from an explicit window; counts are derived as one plus each
    // symbol's occurrences, so the count/window identity holds by
    // construction. Slot value == alphabet_size marks "no symbol yet".
    RingModel(uint32_t alphabet_size, uint32_t target_total, std::span<const uint32_t> window,
        size_t ring_idx, bool with_table)
        : RingModel(alphabet_size, target_total, with_table)
    {
        if (window.size() != window_.size())
            throw Error(Errc::invalid_config, "window must hold exactly " + std::to_string(window_.size()) + " slots");
        if (ring_idx >= window.size())
            throw Error(Errc::invalid_config, "ring index outside the window");
        std::vector<uint32_t> counts(alphabet_size, 1);
        for (size_t n = 0; n < window.size(); ++n) {
            if (window[n] > alphabet_size)
                throw Error(Errc::invalid_config, "window slot holds neither a symbol nor the sentinel");
            if (window[n] < alphabet_size)
                ++counts[window[n]];
            window_[n] = window[n];
        }
        for (uint32_t i = 0; i < alphabet_size; ++i)
            cum_[i + 1] = cum_[i] + counts[i];
        ring_idx_ = ring_idx;
        if (with_table) {
            table_.emplace(target_total);
            uint32_t idx = 0;
            for (uint32_t i = 0; i < alphabet_size; ++i)
                for (uint32_t n = 0; n < counts[i]; ++n)
                    table_->put(idx++, i);
        }
    }

    uint32_t alphabet_size() const { return static_cast<uint32_t>(cum_.size()) - 1; }
    uint32_t target_total() const { return target_total_; }
    uint32_t total() const { return cum_.back(); }
    uint32_t cum(uint32_t i) const { return cum_[i]; }
    uint32_t count(uint32_t i) const { return cum_[i + 1] - cum_[i]; }
    std::span<const uint32_t> cum_counts() const { return cum_; }
    bool filled() const { return cum_.back() == target_total_; }
    bool has_table() const { return table_.has_value(); }
    const DecodeTable& table() const { return *table_; }
    std::span<const uint32_t> window() const { return window_; }
    size_t ring_index() const { return ring_idx_; }

    std::vector<uint32_t> counts() const
    {
        std::vector<uint32_t> h(alphabet_size());
        for (uint32_t i = 0; i < h.size(); ++i)
            h[i] = cum_[i + 1] - cum_[i];
        return h;
    }

    // Overwrites the oldest window slot with `symbol` and shifts the cum
    // entries strictly between the two indices. While the evicted slot
    // still holds the sentinel, only the increment side runs and the total
    // grows; afterwards increment and decrement cancel and the total is
    // conserved.
    template <class Counters>
    void update(uint32_t symbol, Counters& stats)
    {
        const uint32_t alphabet = alphabet_size();
        if (symbol >= alphabet)
            throw Error(Errc::out_of_range, "symbol " + std::to_string(symbol) + " outside alphabet of " + std::to_string(alphabet));
        const uint32_t old_symbol = window_[ring_idx_];
        window_[ring_idx_] = symbol;
        if (++ring_idx_ == window_.size())
            ring_idx_ = 0;
        if (old_symbol < symbol) {
            for (uint32_t j = old_symbol + 1; j <= symbol; ++j) {
                --cum_[j];
                stats.on_cum_write();
                if (table_) {
                    table_->put(cum_[j], j);
                    stats.on_table_write();
                }
            }
        } else if (old_symbol > symbol) {
            for (uint32_t j = symbol + 1; j <= old_symbol; ++j) {
                if (table_) {
                    table_->put(cum_[j], j - 1);
                    stats.on_table_write();
                }
                ++cum_[j];
                stats.on_cum_write();
            }
        }
    }

    void update(uint32_t symbol)
    {
        NoCounters stats;
        update(symbol, stats);
    }

private:
    uint32_t target_total_;
    std::vector<uint32_t> cum_;
    std::vector<uint32_t> window_; // holds alphabet_size as "no symbol yet"
    size_t ring_idx_ = 0;
    std::optional<DecodeTable> table_;
};

// Scales a raw count vector so the total becomes exactly `target_total`
// (a power of two): multiply by target/original, round, keep originally
// nonzero counts at 1 or more, then walk the counts round-robin nudging
// them by one until the sum lands on the target.
FrequencyModel scale_static(std::span<const uint64_t> counts, uint32_t target_total);

} // namespace rcrb

#endif
