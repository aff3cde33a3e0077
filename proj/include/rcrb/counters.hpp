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

#ifndef RCRB_COUNTERS_HPP
#define RCRB_COUNTERS_HPP

#include <cstdint>

namespace rcrb {

// Model and search routines are templated on a counter policy. The default
// NoCounters policy compiles to nothing, so uninstrumented call sites pay
// no cost for the bookkeeping hooks.
struct NoCounters {
    void on_cum_write() {}
    void on_table_write() {}
    void on_table_writes(uint64_t) {}
    void on_search_step() {}
    void on_pow2_symbol() {}
};

// Instrumented policy used by the benchmark harness and the access-count
// verification tests.
struct AccessCounters {
    uint64_t cum_writes = 0;   // element writes to a cumulative-count array
    uint64_t table_writes = 0; // element writes to a decode table
    uint64_t search_steps = 0; // boundary comparisons or table reads
    uint64_t pow2_symbols = 0; // symbols coded through the shift core

    void on_cum_write() { ++cum_writes; }
    void on_table_write() { ++table_writes; }
    void on_table_writes(uint64_t n) { table_writes += n; }
    void on_search_step() { ++search_steps; }
    void on_pow2_symbol() { ++pow2_symbols; }

    void reset() { *this = AccessCounters{}; }
};

} // namespace rcrb

#endif
