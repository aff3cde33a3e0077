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

#ifndef RCRB_IO_HPP
#define RCRB_IO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rcrb {

// Raw symbol file: "RSYM", alphabet size u16 LE, symbol count u64 LE,
// then count x u16 LE symbols.
struct SymbolFile {
    uint32_t alphabet_size = 0;
    std::vector<uint16_t> symbols;
};

std::vector<uint8_t> serialize_rsym(uint32_t alphabet_size, std::span<const uint16_t> symbols);
SymbolFile parse_rsym(std::span<const uint8_t> data);

void write_rsym(const std::string& path, uint32_t alphabet_size, std::span<const uint16_t> symbols);
SymbolFile read_rsym(const std::string& path);

std::vector<uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const uint8_t> data);

} // namespace rcrb

#endif
