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

#include "rcrb/io.hpp"

#include <fstream>

#include "rcrb/errors.hpp"

namespace rcrb {

namespace {

    constexpr char rsym_magic[4] = { 'R', 'S', 'Y', 'M' };

} // namespace

std::vector<uint8_t> serialize_rsym(uint32_t alphabet_size, std::span<const uint16_t> symbols)
{
    if (alphabet_size == 0 || alphabet_size > 0xFFFF)
        throw Error(Errc::invalid_config, "alphabet size must be in [1, 65535]");
    std::vector<uint8_t> out;
    out.reserve(14 + 2 * symbols.size());
    out.insert(out.end(), rsym_magic, rsym_magic + 4);
    out.push_back(static_cast<uint8_t>(alphabet_size));
    out.push_back(static_cast<uint8_t>(alphabet_size >> 8));
    const uint64_t count = symbols.size();
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<uint8_t>(count >> (8 * i)));
    for (size_t n = 0; n < symbols.size(); ++n) {
        if (symbols[n] >= alphabet_size)
            throw Error(Errc::data_error, "symbol " + std::to_string(symbols[n]) + " at position " + std::to_string(n) + " outside alphabet of " + std::to_string(alphabet_size));
        out.push_back(static_cast<uint8_t>(symbols[n]));
        out.push_back(static_cast<uint8_t>(symbols[n] >> 8));
    }
    return out;
}

SymbolFile parse_rsym(std::span<const uint8_t> data)
{
    if (data.size() < 14)
        throw Error(Errc::truncated_stream, "symbol file shorter than its header");
    for (int i = 0; i < 4; ++i) {
        if (data[i] != static_cast<uint8_t>(rsym_magic[i]))
            throw Error(Errc::bad_magic, "bad symbol-file magic");
    }
    SymbolFile file;
    file.alphabet_size = data[4] | (uint32_t(data[5]) << 8);
    if (file.alphabet_size == 0)
        throw Error(Errc::infeasible_header, "symbol file declares an empty alphabet");
    uint64_t count = 0;
    for (int i = 0; i < 8; ++i)
        count |= uint64_t(data[6 + i]) << (8 * i);
    if (data.size() - 14 < 2 * count)
        throw Error(Errc::truncated_stream, "symbol file payload shorter than its declared count");
    file.symbols.resize(static_cast<size_t>(count));
    for (uint64_t n = 0; n < count; ++n) {
        const uint16_t symbol = static_cast<uint16_t>(data[14 + 2 * n] | (uint16_t(data[15 + 2 * n]) << 8));
        if (symbol >= file.alphabet_size)
            throw Error(Errc::data_error, "symbol " + std::to_string(symbol) + " at position " + std::to_string(n) + " outside alphabet of " + std::to_string(file.alphabet_size));
        file.symbols[n] = symbol;
    }
    return file;
}

void write_rsym(const std::string& path, uint32_t alphabet_size, std::span<const uint16_t> symbols)
{
    write_file(path, serialize_rsym(alphabet_size, symbols));
}

SymbolFile read_rsym(const std::string& path)
{
    return parse_rsym(read_file(path));
}

std::vector<uint8_t> read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::io_error, "cannot open " + path);
    std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw Error(Errc::io_error, "read failed for " + path);
    return data;
}

void write_file(const std::string& path, std::span<const uint8_t> data)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(Errc::io_error, "cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out)
        throw Error(Errc::io_error, "write failed for " + path);
}

} // namespace rcrb
