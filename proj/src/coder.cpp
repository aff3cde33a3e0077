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

#include "rcrb/coder.hpp"

#include <utility>

#include "rcrb/search.hpp"

namespace rcrb {

namespace {

    constexpr char stream_magic[4] = { 'R', 'C', 'R', 'B' };
    constexpr uint8_t stream_version = 1;
    constexpr uint32_t max_alphabet = 0xFFFF;

    void put_u16(std::vector<uint8_t>& out, uint16_t v)
    {
        out.push_back(static_cast<uint8_t>(v));
        out.push_back(static_cast<uint8_t>(v >> 8));
    }

    void put_u64(std::vector<uint8_t>& out, uint64_t v)
    {
        for (int i = 0; i < 8; ++i)
            out.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }

    class HeaderReader {
    public:
        HeaderReader(std::span<const uint8_t> data, size_t pos)
            : data_(data)
            , pos_(pos)
        {
        }

        uint8_t u8()
        {
            if (pos_ >= data_.size())
                throw Error(Errc::truncated_stream, "stream ends inside the header");
            return data_[pos_++];
        }

        uint16_t u16()
        {
            const uint16_t lo = u8();
            return static_cast<uint16_t>(lo | (uint16_t(u8()) << 8));
        }

        uint64_t u64()
        {
            uint64_t v = 0;
            for (int i = 0; i < 8; ++i)
                v |= uint64_t(u8()) << (8 * i);
            return v;
        }

        size_t pos() const { return pos_; }

    private:
        std::span<const uint8_t> data_;
        size_t pos_;
    };

} // namespace

void validate_config(const CoderConfig& config, uint32_t alphabet_size)
{
    if (alphabet_size == 0 || alphabet_size > max_alphabet)
        throw Error(Errc::invalid_config, "alphabet size must be in [1, " + std::to_string(max_alphabet) + "]");
    if (config.total_bits < 8 || config.total_bits > 16)
        throw Error(Errc::invalid_config, "total_bits must be in [8, 16]");
    const uint32_t target_total = uint32_t(1) << config.total_bits;
    if (config.mode == Mode::Static) {
        if (config.model == ModelKind::Fenwick)
            throw Error(Errc::invalid_config, "binary indexing has no static mode");
    } else {
        if (alphabet_size >= target_total)
            throw Error(Errc::invalid_config, "adaptive coding needs alphabet size below 2^total_bits");
        if (config.use_shift && config.model != ModelKind::Ring)
            throw Error(Errc::invalid_config, "the shift core requires static mode or a ring model");
    }
}

void write_header(const StreamHeader& header, std::vector<uint8_t>& out)
{
    out.insert(out.end(), stream_magic, stream_magic + 4);
    out.push_back(stream_version);
    out.push_back(static_cast<uint8_t>(header.mode));
    out.push_back(static_cast<uint8_t>(header.model));
    const uint8_t flags = static_cast<uint8_t>((header.shift_enabled ? 1 : 0) | (static_cast<uint8_t>(header.search_hint) << 1));
    out.push_back(flags);
    put_u16(out, static_cast<uint16_t>(header.alphabet_size));
    out.push_back(header.total_bits);
    put_u64(out, header.symbol_count);
    if (header.mode == Mode::Static && header.symbol_count > 0) {
        for (uint32_t count : header.static_counts) {
            if (count > 0xFFFF)
                throw Error(Errc::invalid_config, "static count " + std::to_string(count) + " does not fit the 16-bit header field; use total_bits <= 15");
            put_u16(out, static_cast<uint16_t>(count));
        }
    }
}

StreamHeader read_header(std::span<const uint8_t> stream, size_t& pos)
{
    if (stream.size() < pos + 4)
        throw Error(Errc::bad_magic, "stream shorter than the magic");
    for (int i = 0; i < 4; ++i) {
        if (stream[pos + i] != static_cast<uint8_t>(stream_magic[i]))
            throw Error(Errc::bad_magic, "bad stream magic");
    }
    HeaderReader in(stream, pos + 4);

    const uint8_t version = in.u8();
    if (version != stream_version)
        throw Error(Errc::bad_version, "unsupported stream version " + std::to_string(version));

    StreamHeader header;
    const uint8_t mode = in.u8();
    if (mode > 1)
        throw Error(Errc::infeasible_header, "unknown mode byte " + std::to_string(mode));
    header.mode = static_cast<Mode>(mode);

    const uint8_t model = in.u8();
    if (model > 2)
        throw Error(Errc::infeasible_header, "unknown model byte " + std::to_string(model));
    header.model = static_cast<ModelKind>(model);

    const uint8_t flags = in.u8();
    if ((flags & ~0x07u) != 0)
        throw Error(Errc::infeasible_header, "unknown flag bits");
    header.shift_enabled = (flags & 1) != 0;
    const uint8_t hint = (flags >> 1) & 0x03;
    if (hint > 2)
        throw Error(Errc::infeasible_header, "unknown search hint");
    header.search_hint = static_cast<SearchKind>(hint);

    header.alphabet_size = in.u16();
    header.total_bits = in.u8();
    header.symbol_count = in.u64();

    if (header.mode == Mode::Static && header.symbol_count > 0) {
        header.static_counts.resize(header.alphabet_size);
        uint64_t sum = 0;
        for (uint32_t i = 0; i < header.alphabet_size; ++i) {
            header.static_counts[i] = in.u16();
            sum += header.static_counts[i];
        }
        if (header.total_bits < 8 || header.total_bits > 16 || sum != (uint64_t(1) << header.total_bits))
            throw Error(Errc::infeasible_header, "static counts sum to " + std::to_string(sum) + " instead of 2^total_bits");
    }

    CoderConfig config { header.mode, header.model, header.search_hint, header.total_bits, header.shift_enabled };
    validate_config(config, header.alphabet_size);

    pos = in.pos();
    return header;
}

namespace {

    // ---- encoder policies ------------------------------------------------

    struct LinearEncPolicy {
        FrequencyModel model;

        LinearEncPolicy(uint32_t alphabet_size, uint32_t target_total, bool /*use_shift*/)
            : model(alphabet_size, target_total)
        {
        }

        bool pow2_active() const { return false; }
        uint32_t total() const { return model.total(); }
        std::pair<uint32_t, uint32_t> bounds(uint32_t symbol) const
        {
            return { model.cum(symbol), model.cum(symbol + 1) };
        }

        template <class Counters>
        void update(uint32_t symbol, Counters& stats) { model.update(symbol, stats); }
    };

    struct FenwickEncPolicy {
        FenwickModel model;

        FenwickEncPolicy(uint32_t alphabet_size, uint32_t target_total, bool /*use_shift*/)
            : model(alphabet_size, target_total)
        {
        }

        bool pow2_active() const { return false; }
        uint32_t total() const { return model.total(); }
        std::pair<uint32_t, uint32_t> bounds(uint32_t symbol) const
        {
            return { model.prefix_sum(symbol), model.prefix_sum(symbol + 1) };
        }

        template <class Counters>
        void update(uint32_t symbol, Counters& stats) { model.update(symbol, stats); }
    };

    struct RingEncPolicy {
        RingModel model;
        bool use_shift;

        RingEncPolicy(uint32_t alphabet_size, uint32_t target_total, bool use_shift_)
            : model(alphabet_size, target_total, /*with_table=*/false)
            , use_shift(use_shift_)
        {
        }

        bool pow2_active() const { return use_shift && model.filled(); }
        uint32_t total() const { return model.total(); }
        std::pair<uint32_t, uint32_t> bounds(uint32_t symbol) const
        {
            return { model.cum(symbol), model.cum(symbol + 1) };
        }

        template <class Counters>
        void update(uint32_t symbol, Counters& stats) { model.update(symbol, stats); }
    };

    template <class Policy, class Counters>
    void encode_adaptive_payload(Policy& policy, uint32_t alphabet_size, uint8_t total_bits,
        std::span<const uint16_t> symbols, std::vector<uint8_t>& out, Counters& stats)
    {
        RangeEncoder encoder(out);
        for (size_t n = 0; n < symbols.size(); ++n) {
            const uint32_t symbol = symbols[n];
            if (symbol >= alphabet_size)
                throw Error(Errc::data_error, "symbol " + std::to_string(symbol) + " at position " + std::to_string(n) + " outside alphabet of " + std::to_string(alphabet_size));
            const auto [lo, hi] = policy.bounds(symbol);
            if (policy.pow2_active()) {
                stats.on_pow2_symbol();
                encoder.encode_pow2(lo, hi, total_bits);
            } else {
                encoder.encode(lo, hi, policy.total());
            }
            policy.update(symbol, stats);
        }
        encoder.finish();
    }

    template <bool Shift, class Counters>
    void encode_static_payload(const FrequencyModel& model, uint8_t total_bits,
        std::span<const uint16_t> symbols, std::vector<uint8_t>& out, Counters& stats)
    {
        RangeEncoder encoder(out);
        const uint32_t total = model.total();
        for (const uint16_t symbol : symbols) {
            const uint32_t lo = model.cum(symbol);
            const uint32_t hi = model.cum(symbol + 1);
            if constexpr (Shift) {
                stats.on_pow2_symbol();
                encoder.encode_pow2(lo, hi, total_bits);
            } else {
                encoder.encode(lo, hi, total);
            }
        }
        encoder.finish();
    }

    // ---- decoder policies ------------------------------------------------

    struct LinearDecPolicy {
        FrequencyModel model;
        std::optional<DecodeTable> table;
        uint32_t table_capacity = 0;

        LinearDecPolicy(uint32_t alphabet_size, uint32_t target_total, bool /*use_shift*/, bool with_table)
            : model(alphabet_size, target_total)
        {
            if (with_table) {
                table_capacity = target_total;
                table = create_table(model.counts(), table_capacity);
            }
        }

        bool pow2_active() const { return false; }
        uint32_t total() const { return model.total(); }
        std::pair<uint32_t, uint32_t> bounds(uint32_t symbol) const
        {
            return { model.cum(symbol), model.cum(symbol + 1) };
        }

        template <SearchKind S, class Counters>
        uint32_t find(uint32_t c, Counters& stats) const
        {
            if constexpr (S == SearchKind::Fwd)
                return find_linear(model.cum_counts(), c, stats);
            else if constexpr (S == SearchKind::Log)
                return find_log(model.cum_counts(), c, stats);
            else
                return find_table(*table, c, stats);
        }

        template <class Counters>
        void update(uint32_t symbol, Counters& stats)
        {
            const bool rescaled = model.update(symbol, stats);
            if (!table)
                return;
            if (rescaled) {
                table = create_table(model.counts(), table_capacity);
                stats.on_table_writes(table->used());
            } else {
                update_table_increment(*table, model.cum_counts(), symbol, stats);
            }
        }
    };

    struct FenwickDecPolicy {
        FenwickModel model;
        std::optional<DecodeTable> table;
        uint32_t table_capacity = 0;

        FenwickDecPolicy(uint32_t alphabet_size, uint32_t target_total, bool /*use_shift*/, bool with_table)
            : model(alphabet_size, target_total)
        {
            if (with_table) {
                table_capacity = target_total;
                table = create_table(model.counts(), table_capacity);
            }
        }

        bool pow2_active() const { return false; }
        uint32_t total() const { return model.total(); }
        std::pair<uint32_t, uint32_t> bounds(uint32_t symbol) const
        {
            return { model.prefix_sum(symbol), model.prefix_sum(symbol + 1) };
        }

        template <SearchKind S, class Counters>
        uint32_t find(uint32_t c, Counters& stats) const
        {
            if constexpr (S == SearchKind::Fwd) {
                // Every boundary probe is a full prefix-sum query here.
                uint32_t i = 1;
                for (;; ++i) {
                    stats.on_search_step();
                    if (c < model.prefix_sum(i))
                        break;
                }
                return i - 1;
            } else if constexpr (S == SearchKind::Log) {
                return model.find_symbol(c, stats);
            } else {
                return find_table(*table, c, stats);
            }
        }

        template <class Counters>
        void update(uint32_t symbol, Counters& stats)
        {
            const bool rescaled = model.update(symbol, stats);
            if (!table)
                return;
            if (rescaled) {
                table = create_table(model.counts(), table_capacity);
                stats.on_table_writes(table->used());
            } else {
                const uint32_t alphabet = model.alphabet_size();
                for (uint32_t j = symbol; j < alphabet; ++j) {
                    table->put(model.prefix_sum(j + 1) - 1, j);
                    stats.on_table_write();
                }
            }
        }
    };

    struct RingDecPolicy {
        RingModel model;
        bool use_shift;

        RingDecPolicy(uint32_t alphabet_size, uint32_t target_total, bool use_shift_, bool with_table)
            : model(alphabet_size, target_total, with_table)
            , use_shift(use_shift_)
        {
        }

        bool pow2_active() const { return use_shift && model.filled(); }
        uint32_t total() const { return model.total(); }
        std::pair<uint32_t, uint32_t> bounds(uint32_t symbol) const
        {
            return { model.cum(symbol), model.cum(symbol + 1) };
        }

        template <SearchKind S, class Counters>
        uint32_t find(uint32_t c, Counters& stats) const
        {
            if constexpr (S == SearchKind::Fwd)
                return find_linear(model.cum_counts(), c, stats);
            else if constexpr (S == SearchKind::Log)
                return find_log(model.cum_counts(), c, stats);
            else
                return find_table(model.table(), c, stats);
        }

        template <class Counters>
        void update(uint32_t symbol, Counters& stats) { model.update(symbol, stats); }
    };

    template <class Policy, SearchKind S, class Counters>
    void decode_adaptive_payload(Policy& policy, uint8_t total_bits, uint64_t symbol_count,
        RangeDecoder& decoder, std::vector<uint16_t>& out, Counters& stats)
    {
        for (uint64_t n = 0; n < symbol_count; ++n) {
            uint32_t target;
            if (policy.pow2_active()) {
                stats.on_pow2_symbol();
                target = decoder.decode_target_pow2(total_bits);
            } else {
                target = decoder.decode_target(policy.total());
            }
            const uint32_t symbol = policy.template find<S>(target, stats);
            const auto [lo, hi] = policy.bounds(symbol);
            decoder.consume(lo, hi);
            policy.update(symbol, stats);
            out.push_back(static_cast<uint16_t>(symbol));
        }
    }

    template <class Policy, class Counters>
    void decode_adaptive_dispatch(Policy& policy, SearchKind search, uint8_t total_bits,
        uint64_t symbol_count, RangeDecoder& decoder, std::vector<uint16_t>& out, Counters& stats)
    {
        switch (search) {
        case SearchKind::Fwd:
            decode_adaptive_payload<Policy, SearchKind::Fwd>(policy, total_bits, symbol_count, decoder, out, stats);
            break;
        case SearchKind::Log:
            decode_adaptive_payload<Policy, SearchKind::Log>(policy, total_bits, symbol_count, decoder, out, stats);
            break;
        case SearchKind::Tab:
            decode_adaptive_payload<Policy, SearchKind::Tab>(policy, total_bits, symbol_count, decoder, out, stats);
            break;
        }
    }

    template <SearchKind S, bool Shift, class Counters>
    void decode_static_payload(const FrequencyModel& model, const DecodeTable* table, uint8_t total_bits,
        uint64_t symbol_count, RangeDecoder& decoder, std::vector<uint16_t>& out, Counters& stats)
    {
        const uint32_t total = model.total();
        for (uint64_t n = 0; n < symbol_count; ++n) {
            uint32_t target;
            if constexpr (Shift) {
                stats.on_pow2_symbol();
                target = decoder.decode_target_pow2(total_bits);
            } else {
                target = decoder.decode_target(total);
            }
            uint32_t symbol;
            if constexpr (S == SearchKind::Fwd)
                symbol = find_linear(model.cum_counts(), target, stats);
            else if constexpr (S == SearchKind::Log)
                symbol = find_log(model.cum_counts(), target, stats);
            else
                symbol = find_table(*table, target, stats);
            decoder.consume(model.cum(symbol), model.cum(symbol + 1));
            out.push_back(static_cast<uint16_t>(symbol));
        }
    }

    template <bool Shift, class Counters>
    void decode_static_dispatch(const FrequencyModel& model, const DecodeTable* table, SearchKind search,
        uint8_t total_bits, uint64_t symbol_count, RangeDecoder& decoder, std::vector<uint16_t>& out, Counters& stats)
    {
        switch (search) {
        case SearchKind::Fwd:
            decode_static_payload<SearchKind::Fwd, Shift>(model, table, total_bits, symbol_count, decoder, out, stats);
            break;
        case SearchKind::Log:
            decode_static_payload<SearchKind::Log, Shift>(model, table, total_bits, symbol_count, decoder, out, stats);
            break;
        case SearchKind::Tab:
            decode_static_payload<SearchKind::Tab, Shift>(model, table, total_bits, symbol_count, decoder, out, stats);
            break;
        }
    }

    template <class Counters>
    EncodeStats encode_sequence_impl(const CoderConfig& config, uint32_t alphabet_size,
        std::span<const uint16_t> symbols, std::vector<uint8_t>& out, Counters& stats)
    {
        validate_config(config, alphabet_size);
        const uint32_t target_total = uint32_t(1) << config.total_bits;

        StreamHeader header;
        header.mode = config.mode;
        header.model = config.mode == Mode::Static ? ModelKind::Linear : config.model;
        header.search_hint = config.search;
        header.shift_enabled = config.use_shift;
        header.alphabet_size = alphabet_size;
        header.total_bits = config.total_bits;
        header.symbol_count = symbols.size();

        std::optional<FrequencyModel> static_model;
        if (config.mode == Mode::Static && !symbols.empty()) {
            std::vector<uint64_t> counts(alphabet_size, 0);
            for (size_t n = 0; n < symbols.size(); ++n) {
                if (symbols[n] >= alphabet_size)
                    throw Error(Errc::data_error, "symbol " + std::to_string(symbols[n]) + " at position " + std::to_string(n) + " outside alphabet of " + std::to_string(alphabet_size));
                ++counts[symbols[n]];
            }
            static_model = scale_static(counts, target_total);
            header.static_counts = static_model->counts();
        }

        write_header(header, out);
        const uint64_t header_bytes = out.size();

        if (!symbols.empty()) {
            if (config.mode == Mode::Static) {
                if (config.use_shift)
                    encode_static_payload<true>(*static_model, config.total_bits, symbols, out, stats);
                else
                    encode_static_payload<false>(*static_model, config.total_bits, symbols, out, stats);
            } else {
                switch (config.model) {
                case ModelKind::Linear: {
                    LinearEncPolicy policy(alphabet_size, target_total, config.use_shift);
                    encode_adaptive_payload(policy, alphabet_size, config.total_bits, symbols, out, stats);
                    break;
                }
                case ModelKind::Fenwick: {
                    FenwickEncPolicy policy(alphabet_size, target_total, config.use_shift);
                    encode_adaptive_payload(policy, alphabet_size, config.total_bits, symbols, out, stats);
                    break;
                }
                case ModelKind::Ring: {
                    RingEncPolicy policy(alphabet_size, target_total, config.use_shift);
                    encode_adaptive_payload(policy, alphabet_size, config.total_bits, symbols, out, stats);
                    break;
                }
                }
            }
        }

        EncodeStats result;
        result.symbol_count = symbols.size();
        result.header_bytes = header_bytes;
        result.payload_bytes = out.size() - header_bytes;
        return result;
    }

    template <class Counters>
    std::vector<uint16_t> decode_sequence_impl(std::span<const uint8_t> stream,
        std::optional<SearchKind> search_override, Counters& stats)
    {
        size_t pos = 0;
        const StreamHeader header = read_header(stream, pos);
        std::vector<uint16_t> out;
        if (header.symbol_count == 0)
            return out;
        out.reserve(static_cast<size_t>(std::min<uint64_t>(header.symbol_count, uint64_t(1) << 20)));

        const SearchKind search = search_override.value_or(header.search_hint);
        const uint32_t target_total = uint32_t(1) << header.total_bits;
        RangeDecoder decoder(stream.subspan(pos));

        if (header.mode == Mode::Static) {
            const FrequencyModel model = FrequencyModel::from_counts(header.static_counts, target_total);
            std::optional<DecodeTable> table;
            if (search == SearchKind::Tab)
                table = create_table(header.static_counts, target_total);
            const DecodeTable* table_ptr = table ? &*table : nullptr;
            if (header.shift_enabled)
                decode_static_dispatch<true>(model, table_ptr, search, header.total_bits, header.symbol_count, decoder, out, stats);
            else
                decode_static_dispatch<false>(model, table_ptr, search, header.total_bits, header.symbol_count, decoder, out, stats);
        } else {
            const bool with_table = search == SearchKind::Tab;
            switch (header.model) {
            case ModelKind::Linear: {
                LinearDecPolicy policy(header.alphabet_size, target_total, header.shift_enabled, with_table);
                decode_adaptive_dispatch(policy, search, header.total_bits, header.symbol_count, decoder, out, stats);
                break;
            }
            case ModelKind::Fenwick: {
                FenwickDecPolicy policy(header.alphabet_size, target_total, header.shift_enabled, with_table);
                decode_adaptive_dispatch(policy, search, header.total_bits, header.symbol_count, decoder, out, stats);
                break;
            }
            case ModelKind::Ring: {
                RingDecPolicy policy(header.alphabet_size, target_total, header.shift_enabled, with_table);
                decode_adaptive_dispatch(policy, search, header.total_bits, header.symbol_count, decoder, out, stats);
                break;
            }
            }
        }
        return out;
    }

} // namespace

EncodeStats encode_sequence(const CoderConfig& config, uint32_t alphabet_size,
    std::span<const uint16_t> symbols, std::vector<uint8_t>& out)
{
    NoCounters stats;
    return encode_sequence_impl(config, alphabet_size, symbols, out, stats);
}

EncodeStats encode_sequence(const CoderConfig& config, uint32_t alphabet_size,
    std::span<const uint16_t> symbols, std::vector<uint8_t>& out, AccessCounters& stats)
{
    return encode_sequence_impl(config, alphabet_size, symbols, out, stats);
}

std::vector<uint16_t> decode_sequence(std::span<const uint8_t> stream, std::optional<SearchKind> search_override)
{
    NoCounters stats;
    return decode_sequence_impl(stream, search_override, stats);
}

std::vector<uint16_t> decode_sequence(std::span<const uint8_t> stream,
    std::optional<SearchKind> search_override, AccessCounters& stats)
{
    return decode_sequence_impl(stream, search_override, stats);
}

} // namespace rcrb
