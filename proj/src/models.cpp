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

#include "rcrb/models.hpp"

#include <cmath>

namespace rcrb {

FrequencyModel scale_static(std::span<const uint64_t> counts, uint32_t target_total)
{
    if (counts.empty())
        throw Error(Errc::invalid_config, "alphabet size must be at least 1");
    if (!is_power_of_two(target_total) || target_total > max_total_limit)
        throw Error(Errc::invalid_config, "target total must be a power of two not above " + std::to_string(max_total_limit));

    uint64_t original_total = 0;
    uint64_t nonzero = 0;
    for (uint64_t c : counts) {
        original_total += c;
        if (c > 0)
            ++nonzero;
    }
    if (original_total == 0)
        throw Error(Errc::infeasible_scaling, "cannot scale an empty distribution");
    if (nonzero > target_total)
        throw Error(Errc::infeasible_scaling, std::to_string(nonzero) + " distinct symbols cannot share a total of " + std::to_string(target_total));

    const double scale = static_cast<double>(target_total) / static_cast<double>(original_total);
    std::vector<uint32_t> scaled(counts.size(), 0);
    uint64_t current_total = 0;
    for (size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == 0)
            continue;
        const auto rounded = static_cast<uint64_t>(std::llround(scale * static_cast<double>(counts[i])));
        scaled[i] = rounded == 0 ? 1 : static_cast<uint32_t>(std::min<uint64_t>(rounded, target_total));
        current_total += scaled[i];
    }

    // Round-robin correction until the total lands exactly on the target.
    // Decrements skip counts already at 1, increments skip absent symbols.
    size_t idx = 0;
    while (current_total > target_total) {
        if (scaled[idx] > 1) {
            --scaled[idx];
            --current_total;
        }
        if (++idx == scaled.size())
            idx = 0;
    }
    while (current_total < target_total) {
        if (scaled[idx] > 0) {
            ++scaled[idx];
            ++current_total;
        }
        if (++idx == scaled.size())
            idx = 0;
    }

    return FrequencyModel::from_counts(scaled, target_total);
}

} // namespace rcrb
