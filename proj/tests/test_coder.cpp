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

#include "rcrb/bench.hpp"
#include "rcrb/coder.hpp"
#include "rcrb/datagen.hpp"

using namespace rcrb;

namespace {

std::vector<uint8_t> payload_of(std::span<const uint8_t> stream)
{
    size_t pos = 0;
    read_header(stream, pos);
    return { stream.begin() + static_cast<ptrdiff_t>(pos), stream.end() };
}

std::vector<uint16_t> sample(Dist dist, uint32_t alphabet, size_t n, uint64_t seed)
{
    if (dist == Dist::Uniform)
        return gen_uniform(alphabet, n, seed);
    return gen_geometric({ alphabet, skew_for_alphabet(alphabet), seed }, n);
}

} // namespace

TEST_SUITE_BEGIN("coder");

TEST_CASE("digit buffer passes carry-free digits through")
{
    DigitBuffer buffer;
    std::vector<uint8_t> out;
    buffer.push(0x41, false, out);
    CHECK(out.empty()); // held back as cache
    buffer.push(0x42, false, out);
    REQUIRE(out.size() == 1);
    CHECK(out[0] == 0x41);
    buffer.drain(out);
    REQUIRE(out.size() == 2);
    CHECK(out[1] == 0x42);
}

TEST_CASE("a carry increments the cache and zeroes the 0xFF run")
{
    DigitBuffer buffer;
    std::vector<uint8_t> out;
    buffer.set_pending(0x41, 2); // cache 0x41 followed by two 0xFF digits
    buffer.push(0x10, true, out);
    REQUIRE(out.size() == 3);
    CHECK(out[0] == 0x42);
    CHECK(out[1] == 0x00);
    CHECK(out[2] == 0x00);
    CHECK(buffer.pending_cache() == 0x10);
}

TEST_CASE("0xFF digits extend the pending run without output")
{
    DigitBuffer buffer;
    std::vector<uint8_t> out;
    buffer.push(0x41, false, out);
    buffer.push(0xFF, false, out);
    buffer.push(0xFF, false, out);
    CHECK(out.empty());
    CHECK(buffer.pending_run() == 2);
    buffer.push(0x07, false, out); // flushes cache + run unchanged
    REQUIRE(out.size() == 3);
    CHECK(out[0] == 0x41);
    CHECK(out[1] == 0xFF);
    CHECK(out[2] == 0xFF);
}

TEST_CASE("first coding step narrows the range without output")
{
    std::vector<uint8_t> out;
    RangeEncoder encoder(out);
    const uint64_t step = top_value / 10;
    encoder.encode(0, 2, 10); // toy model, symbol 0
    CHECK(encoder.low() == 0);
    CHECK(encoder.range() == 2 * step);
    CHECK(out.empty());
}

TEST_CASE("a certain symbol costs nothing")
{
    std::vector<uint8_t> out;
    RangeEncoder encoder(out);
    for (int i = 0; i < 1000; ++i)
        encoder.encode(0, 1, 1); // the only symbol of a K=1 model
    CHECK(out.empty());
    CHECK(encoder.range() == top_value);
    encoder.finish();
    CHECK(out.size() <= code_digits);
}

TEST_CASE("shift and division cores agree when the total is a power of two")
{
    std::vector<uint8_t> a, b;
    RangeEncoder div_enc(a), shift_enc(b);
    Xoshiro256ss rng(8);
    const uint32_t total = 1u << 12;
    for (int i = 0; i < 5000; ++i) {
        const auto lo = static_cast<uint32_t>(rng.next_below(total - 1));
        const uint32_t hi = lo + 1 + static_cast<uint32_t>(rng.next_below(total - lo - 1 + 1));
        div_enc.encode(lo, hi, total);
        shift_enc.encode_pow2(lo, hi, 12);
        REQUIRE(div_enc.low() == shift_enc.low());
        REQUIRE(div_enc.range() == shift_enc.range());
    }
    div_enc.finish();
    shift_enc.finish();
    CHECK(a == b);
}

TEST_CASE("header roundtrip and validation")
{
    StreamHeader header;
    header.mode = Mode::Static;
    header.model = ModelKind::Linear;
    header.search_hint = SearchKind::Log;
    header.shift_enabled = true;
    header.alphabet_size = 4;
    header.total_bits = 8;
    header.symbol_count = 99;
    header.static_counts = { 100, 50, 56, 50 };

    std::vector<uint8_t> bytes;
    write_header(header, bytes);
    size_t pos = 0;
    const StreamHeader parsed = read_header(bytes, pos);
    CHECK(pos == bytes.size());
    CHECK(parsed.mode == Mode::Static);
    CHECK(parsed.search_hint == SearchKind::Log);
    CHECK(parsed.shift_enabled);
    CHECK(parsed.alphabet_size == 4);
    CHECK(parsed.total_bits == 8);
    CHECK(parsed.symbol_count == 99);
    CHECK(parsed.static_counts == header.static_counts);

    SUBCASE("corrupted magic")
    {
        bytes[0] ^= 0xFF;
        size_t p = 0;
        CHECK_THROWS_WITH_AS(read_header(bytes, p), "bad stream magic", Error);
    }
    SUBCASE("unsupported version")
    {
        bytes[4] = 9;
        size_t p = 0;
        try {
            read_header(bytes, p);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::bad_version);
        }
    }
    SUBCASE("counts must sum to the declared power of two")
    {
        bytes[19] ^= 0x01; // first count byte
        size_t p = 0;
        try {
            read_header(bytes, p);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::infeasible_header);
        }
    }
    SUBCASE("truncated header")
    {
        const std::vector<uint8_t> cut(bytes.begin(), bytes.begin() + 12);
        size_t p = 0;
        try {
            read_header(cut, p);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::truncated_stream);
        }
    }
}

TEST_CASE("configuration validation follows the method matrix")
{
    CoderConfig config;

    config = { Mode::Adaptive, ModelKind::Linear, SearchKind::Fwd, 12, true };
    CHECK_THROWS_AS(validate_config(config, 16), Error); // shift without ring

    config = { Mode::Adaptive, ModelKind::Fenwick, SearchKind::Log, 12, true };
    CHECK_THROWS_AS(validate_config(config, 16), Error);

    config = { Mode::Static, ModelKind::Fenwick, SearchKind::Log, 12, true };
    CHECK_THROWS_AS(validate_config(config, 16), Error); // no static BI

    config = { Mode::Adaptive, ModelKind::Ring, SearchKind::Tab, 12, true };
    CHECK_NOTHROW(validate_config(config, 16));
    CHECK_THROWS_AS(validate_config(config, 4096), Error); // no window left

    config = { Mode::Adaptive, ModelKind::Linear, SearchKind::Fwd, 7, false };
    CHECK_THROWS_AS(validate_config(config, 16), Error); // total_bits below 8
    config.total_bits = 17;
    CHECK_THROWS_AS(validate_config(config, 16), Error);
}

TEST_CASE("roundtrip across the full method matrix")
{
    for (Mode mode : { Mode::Static, Mode::Adaptive }) {
        for (const std::string& label : valid_labels(mode)) {
            for (uint32_t alphabet : { 2u, 32u }) {
                for (Dist dist : { Dist::Uniform, Dist::Geometric }) {
                    CAPTURE(label);
                    CAPTURE(alphabet);
                    const CoderConfig config = config_from_label(mode, label);
                    const std::vector<uint16_t> symbols = sample(dist, alphabet, 20000, 42);
                    std::vector<uint8_t> stream;
                    encode_sequence(config, alphabet, symbols, stream);
                    const std::vector<uint16_t> decoded = decode_sequence(stream);
                    REQUIRE(decoded == symbols);
                }
            }
        }
    }
}

TEST_CASE("the payload never depends on the decoder search strategy")
{
    const std::vector<uint16_t> symbols = sample(Dist::Geometric, 32, 30000, 5);
    for (Mode mode : { Mode::Static, Mode::Adaptive }) {
        for (ModelKind model : { ModelKind::Linear, ModelKind::Fenwick, ModelKind::Ring }) {
            if (mode == Mode::Static && model != ModelKind::Linear)
                continue;
            CoderConfig config;
            config.mode = mode;
            config.model = model;
            config.total_bits = 12;
            config.use_shift = default_use_shift(mode, model);

            std::vector<std::vector<uint8_t>> payloads;
            std::vector<uint8_t> reference_stream;
            for (SearchKind search : { SearchKind::Fwd, SearchKind::Log, SearchKind::Tab }) {
                config.search = search;
                std::vector<uint8_t> stream;
                encode_sequence(config, 32, symbols, stream);
                payloads.push_back(payload_of(stream));
                reference_stream = std::move(stream);
            }
            CHECK(payloads[0] == payloads[1]);
            CHECK(payloads[1] == payloads[2]);

            // and any stream decodes identically under all three strategies
            const auto fwd = decode_sequence(reference_stream, SearchKind::Fwd);
            const auto log = decode_sequence(reference_stream, SearchKind::Log);
            const auto tab = decode_sequence(reference_stream, SearchKind::Tab);
            CHECK(fwd == symbols);
            CHECK(fwd == log);
            CHECK(fwd == tab);
        }
    }
}

TEST_CASE("linear and binary-indexed models produce byte-identical payloads")
{
    const std::vector<uint16_t> symbols = sample(Dist::Geometric, 64, 40000, 9);
    CoderConfig linear { Mode::Adaptive, ModelKind::Linear, SearchKind::Log, 12, false };
    CoderConfig fenwick { Mode::Adaptive, ModelKind::Fenwick, SearchKind::Log, 12, false };
    std::vector<uint8_t> a, b;
    encode_sequence(linear, 64, symbols, a);
    encode_sequence(fenwick, 64, symbols, b);
    CHECK(payload_of(a) == payload_of(b));
}

TEST_CASE("ring streams are byte-identical with and without the shift core")
{
    const std::vector<uint16_t> symbols = sample(Dist::Uniform, 16, 30000, 77);
    CoderConfig with_shift { Mode::Adaptive, ModelKind::Ring, SearchKind::Tab, 10, true };
    CoderConfig without_shift { Mode::Adaptive, ModelKind::Ring, SearchKind::Tab, 10, false };
    std::vector<uint8_t> a, b;
    encode_sequence(with_shift, 16, symbols, a);
    encode_sequence(without_shift, 16, symbols, b);
    CHECK(payload_of(a) == payload_of(b));
    CHECK(decode_sequence(a) == symbols);
    CHECK(decode_sequence(b) == symbols);
}

TEST_CASE("static streams are byte-identical with and without the shift core")
{
    const std::vector<uint16_t> symbols = sample(Dist::Geometric, 32, 30000, 13);
    CoderConfig with_shift { Mode::Static, ModelKind::Linear, SearchKind::Tab, 12, true };
    CoderConfig without_shift { Mode::Static, ModelKind::Linear, SearchKind::Tab, 12, false };
    std::vector<uint8_t> a, b;
    encode_sequence(with_shift, 32, symbols, a);
    encode_sequence(without_shift, 32, symbols, b);
    CHECK(payload_of(a) == payload_of(b));
    CHECK(decode_sequence(a) == symbols);
}

TEST_CASE("encoder and decoder switch to the shift core at the same symbol")
{
    const uint32_t alphabet = 16;
    const uint8_t bits = 10;
    const size_t fill = (1u << bits) - alphabet;
    const std::vector<uint16_t> symbols = sample(Dist::Uniform, alphabet, 5000, 3);
    REQUIRE(symbols.size() > fill);

    CoderConfig config { Mode::Adaptive, ModelKind::Ring, SearchKind::Tab, bits, true };
    AccessCounters enc_stats, dec_stats;
    std::vector<uint8_t> stream;
    encode_sequence(config, alphabet, symbols, stream, enc_stats);
    const std::vector<uint16_t> decoded = decode_sequence(stream, std::nullopt, dec_stats);
    REQUIRE(decoded == symbols);

    CHECK(enc_stats.pow2_symbols == symbols.size() - fill);
    CHECK(dec_stats.pow2_symbols == enc_stats.pow2_symbols);
}

TEST_CASE("an empty sequence costs only the header")
{
    for (Mode mode : { Mode::Static, Mode::Adaptive }) {
        CoderConfig config;
        config.mode = mode;
        config.model = mode == Mode::Static ? ModelKind::Linear : ModelKind::Ring;
        std::vector<uint8_t> stream;
        const EncodeStats stats = encode_sequence(config, 8, {}, stream);
        CHECK(stats.payload_bytes == 0);
        CHECK(stream.size() == stats.header_bytes);
        CHECK(decode_sequence(stream).empty());
    }
}

TEST_CASE("a single-symbol alphabet decodes from a six-byte payload")
{
    const std::vector<uint16_t> symbols(50000, 0);
    CoderConfig config { Mode::Adaptive, ModelKind::Linear, SearchKind::Fwd, 12, false };
    std::vector<uint8_t> stream;
    const EncodeStats stats = encode_sequence(config, 1, symbols, stream);
    CHECK(stats.payload_bytes <= code_digits);
    CHECK(decode_sequence(stream) == symbols);
}

TEST_CASE("trailing garbage after the payload is ignored")
{
    const std::vector<uint16_t> symbols = sample(Dist::Uniform, 8, 5000, 21);
    CoderConfig config { Mode::Adaptive, ModelKind::Ring, SearchKind::Log, 12, true };
    std::vector<uint8_t> stream;
    encode_sequence(config, 8, symbols, stream);
    std::vector<uint8_t> padded = stream;
    padded.insert(padded.end(), { 0xDE, 0xAD, 0xBE, 0xEF });
    CHECK(decode_sequence(padded) == symbols);
}

TEST_CASE("truncated payloads raise a stream error")
{
    const std::vector<uint16_t> symbols = sample(Dist::Geometric, 16, 4000, 11);
    CoderConfig config { Mode::Static, ModelKind::Linear, SearchKind::Tab, 12, true };
    std::vector<uint8_t> stream;
    encode_sequence(config, 16, symbols, stream);

    for (size_t cut = 1; cut <= 40; ++cut) {
        const std::vector<uint8_t> truncated(stream.begin(), stream.end() - static_cast<ptrdiff_t>(cut));
        bool threw = false;
        try {
            const auto decoded = decode_sequence(truncated);
            (void)decoded;
        } catch (const Error& e) {
            threw = true;
            CHECK(e.code() == Errc::truncated_stream);
        }
        CHECK(threw);
    }
}

TEST_CASE("symbols outside the alphabet are reported with their position")
{
    std::vector<uint16_t> symbols(100, 3);
    symbols[57] = 9;
    CoderConfig config { Mode::Adaptive, ModelKind::Linear, SearchKind::Fwd, 12, false };
    std::vector<uint8_t> stream;
    try {
        encode_sequence(config, 8, symbols, stream);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::data_error);
        CHECK(std::string(e.what()).find("57") != std::string::npos);
    }
}

TEST_CASE("oversized static counts cannot be serialized")
{
    // one distinct symbol at total_bits=16 would need a count of 65536
    const std::vector<uint16_t> symbols(100, 0);
    CoderConfig config { Mode::Static, ModelKind::Linear, SearchKind::Tab, 16, true };
    std::vector<uint8_t> stream;
    CHECK_THROWS_AS(encode_sequence(config, 4, symbols, stream), Error);

    // with two distinct symbols every count fits
    std::vector<uint16_t> two(100, 0);
    two[0] = 1;
    std::vector<uint8_t> ok;
    encode_sequence(config, 4, two, ok);
    CHECK(decode_sequence(ok) == two);
}

TEST_SUITE_END();
