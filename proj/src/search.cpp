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

#include "rcrb/search.hpp"

#include <numeric>

namespace rcrb {

DecodeTable create_table(std::span<const uint32_t> counts, uint32_t capacity)
{
    uint64_t total = 0;
    for (uint32_t c : counts)
        total += c;
    if (capacity == 0)
        capacity = static_cast<uint32_t>(total);
    if (total > capacity)
        throw Error(Errc::capacity_exceeded, "total count " + std::to_string(total) + " exceeds table capacity " + std::to_string(capacity));
    DecodeTable table(capacity);
    uint32_t idx = 0;
    for (uint32_t i = 0; i < counts.size(); ++i) {
        for (uint32_t n = 0; n < counts[i]; ++n)
            table.put(idx++, i);
    }
    return table;
}

} // namespace rcrb
