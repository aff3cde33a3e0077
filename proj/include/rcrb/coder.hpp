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

#ifndef RCRB_CODER_HPP
#define RCRB_CODER_HPP

#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcrb/counters.hpp"
#include "rcrb/errors.hpp"
#include "rcrb/models.hpp"

namespace rcrb {

// Byte-oriented range coder: base b = 256, m = 6 digits, 48-bit registers.
inline constexpr unsigned code_digits = 6;
inline constexpr uint64_t code_mask = (uint64_t(1) << 48) - 1;
inline constexpr uint64_t top_value = uint64_t(1) << 48;    // b^m
inline constexpr uint64_t bottom_value = uint64_t(1) << 40; // b^(m-1)

enum class Mode : uint8_t { Static = 0, Adaptive = 1 };
enum class ModelKind : uint8_t { Linear = 0, Fenwick = 1, Ring = 2 };
enum class SearchKind : uint8_t { Fwd = 0, Log = 1, Tab = 2 };

struct CoderConfig {
    Mode mode = Mode::Adaptive;
    ModelKind model = ModelKind::Ring;
    SearchKind search = SearchKind::Tab;
    uint8_t total_bits = 12; // M = 2^total_bits
    bool use_shift = true;   // shift core where the combination allows it
};

// The shift core needs a power-of-two total: always true in static mode,
// true after the fill phase for ring models, never for the others.
inline bool shift_allowed(Mode mode, ModelKind model)
{
    return mode == Mode::Static || model == ModelKind::Ring;
}

inline bool default_use_shift(Mode mode, ModelKind model)
{
    return shift_allowed(mode, model);
}

// Rejects combinations outside the supported matrix: binary indexing never
// pairs with the shift core or with static mode, and adaptive models need
// headroom between alphabet size and 2^total_bits.
void validate_config(const CoderConfig& config, uint32_t alphabet_size);

struct StreamHeader {
    Mode mode = Mode::Adaptive;
    ModelKind model = ModelKind::Ring;
    SearchKind search_hint = SearchKind::Tab;
    bool shift_enabled = true;
    uint32_t alphabet_size = 0;
    uint8_t total_bits = 12;
    uint64_t symbol_count = 0;
    std::vector<uint32_t> static_counts; // present iff static and symbol_count > 0
};

void write_header(const StreamHeader& header, std::vector<uint8_t>& out);
StreamHeader read_header(std::span<const uint8_t> stream, size_t& pos);

struct EncodeStats {
    uint64_t symbol_count = 0;
    uint64_t header_bytes = 0;
    uint64_t payload_bytes = 0;

    double bitrate_bps() const
    {
        return symbol_count == 0 ? 0.0 : 8.0 * static_cast<double>(payload_bytes) / static_cast<double>(symbol_count);
    }
};

// Holds back one cache digit plus a run of 0xFF digits so a carry out of
// the coder register can still be folded into the output: the carry turns
// the cache into cache+1 and the run into 0x00 bytes. The cache is only
// ever 0xFF when a carry was just absorbed, and in that state the residual
// interval fits below the next carry boundary, so cache+1 cannot overflow.
class DigitBuffer {
public:
    void push(uint8_t digit, bool carry, std::vector<uint8_t>& out)
    {
        if (cache_ < 0) {
            assert(!carry);
            cache_ = digit;
            return;
        }
        if (!carry && digit == 0xFF) {
            ++ff_run_;
            return;
        }
        out.push_back(static_cast<uint8_t>(cache_ + (carry ? 1 : 0)));
        const uint8_t fill = carry ? 0x00 : 0xFF;
        for (uint64_t i = 0; i < ff_run_; ++i)
            out.push_back(fill);
        ff_run_ = 0;
        cache_ = digit;
    }

    void drain(std::vector<uint8_t>& out)
    {
        if (cache_ < 0)
            return;
        out.push_back(static_cast<uint8_t>(cache_));
        for (uint64_t i = 0; i < ff_run_; ++i)
            out.push_back(0xFF);
        cache_ = -1;
        ff_run_ = 0;
    }

    int pending_cache() const { return cache_; }
    uint64_t pending_run() const { return ff_run_; }

    // Test hook: preload a pending state.
    void set_pending(int cache, uint64_t ff_run)
    {
        cache_ = cache;
        ff_run_ = ff_run;
    }

private:
    int cache_ = -1; // -1 until the first digit arrives
    uint64_t ff_run_ = 0;
};

class RangeEncoder {
public:
    explicit RangeEncoder(std::vector<uint8_t>& out)
        : out_(out)
    {
    }

    // Narrows the interval to [cum_lo, cum_hi) / total using one division.
    void encode(uint32_t cum_lo, uint32_t cum_hi, uint32_t total)
    {
        encode_with_step(cum_lo, cum_hi, range_ / total);
    }

    // Same narrowing with total == 2^total_bits, division replaced by a shift.
    void encode_pow2(uint32_t cum_lo, uint32_t cum_hi, unsigned total_bits)
    {
        encode_with_step(cum_lo, cum_hi, range_ >> total_bits);
    }

    // Emits the six digits still held in the register so the decoder can
    // reconstruct every coded symbol.
    void finish()
    {
        for (unsigned i = 0; i < code_digits; ++i)
            shift_low();
        digits_.drain(out_);
    }

    uint64_t low() const { return low_; }
    uint64_t range() const { return range_; }

private:
    void encode_with_step(uint32_t cum_lo, uint32_t cum_hi, uint64_t step)
    {
        assert(range_ >= bottom_value);
        if (cum_hi <= cum_lo)
            throw Error(Errc::unencodable_symbol, "symbol has an empty subinterval");
        low_ += cum_lo * step;
        range_ = (cum_hi - cum_lo) * step;
        while (range_ < bottom_value) {
            shift_low();
            range_ <<= 8;
        }
    }

    void shift_low()
    {
        const bool carry = (low_ >> 48) != 0;
        digits_.push(static_cast<uint8_t>(low_ >> 40), carry, out_);
        low_ = (low_ << 8) & code_mask;
    }

    uint64_t low_ = 0;
    uint64_t range_ = top_value;
    DigitBuffer digits_;
    std::vector<uint8_t>& out_;
};

class RangeDecoder {
public:
    // Primes the code register with the first m digits.
    explicit RangeDecoder(std::span<const uint8_t> payload)
        : data_(payload)
    {
        for (unsigned i = 0; i < code_digits; ++i)
            code_ = (code_ << 8) | next_byte();
    }

    // First half of a symbol step: computes the search target
    // c = code / step, clamped into the valid interval.
    uint32_t decode_target(uint32_t total)
    {
        assert(range_ >= bottom_value);
        step_ = range_ / total;
        return clamp_target(total);
    }

    uint32_t decode_target_pow2(unsigned total_bits)
    {
        assert(range_ >= bottom_value);
        step_ = range_ >> total_bits;
        return clamp_target(uint32_t(1) << total_bits);
    }

    // Second half, after the symbol's bounds are known.
    void consume(uint32_t cum_lo, uint32_t cum_hi)
    {
        code_ -= cum_lo * step_;
        range_ = (cum_hi - cum_lo) * step_;
        while (range_ < bottom_value) {
            code_ = ((code_ << 8) | next_byte()) & code_mask;
            range_ <<= 8;
        }
        assert(code_ < range_);
    }

    size_t consumed() const { return pos_; }
    uint64_t range() const { return range_; }

private:
    uint32_t clamp_target(uint32_t total)
    {
        const uint64_t target = code_ / step_;
        return target >= total ? total - 1 : static_cast<uint32_t>(target);
    }

    uint8_t next_byte()
    {
        if (pos_ >= data_.size())
            throw Error(Errc::truncated_stream, "payload exhausted after " + std::to_string(pos_) + " bytes");
        return data_[pos_++];
    }

    std::span<const uint8_t> data_;
    size_t pos_ = 0;
    uint64_t code_ = 0;
    uint64_t range_ = top_value;
    uint64_t step_ = 0;
};

// Encodes `symbols` (all < alphabet_size) into a self-describing stream:
// header, then payload. Static mode counts the input, scales the counts to
// 2^total_bits, and ships them in the header; adaptive modes start uniform
// and update after every symbol exactly as the decoder will.
EncodeStats encode_sequence(const CoderConfig& config, uint32_t alphabet_size,
    std::span<const uint16_t> symbols, std::vector<uint8_t>& out);
EncodeStats encode_sequence(const CoderConfig& config, uint32_t alphabet_size,
    std::span<const uint16_t> symbols, std::vector<uint8_t>& out, AccessCounters& stats);

// Decodes a full stream. The search strategy defaults to the header hint;
// the override switches strategies without touching the payload contract.
std::vector<uint16_t> decode_sequence(std::span<const uint8_t> stream,
    std::optional<SearchKind> search_override = std::nullopt);
std::vector<uint16_t> decode_sequence(std::span<const uint8_t> stream,
    std::optional<SearchKind> search_override, AccessCounters& stats);

} // namespace rcrb

#endif
