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

#ifndef RCRB_BENCH_HPP
#define RCRB_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rcrb/coder.hpp"
#include "rcrb/counters.hpp"

namespace rcrb {

enum class Dist : uint8_t { Uniform, Geometric };

std::string_view dist_name(Dist dist);

// ---- analytic expectations for cum-array accesses per update ------------

enum class UpdateScheme { Standard, RingBuffer };

// Uniform symbols: Standard updates touch K - i entries, mean K - (K-1)/2.
// Ring updates touch |i - j| entries, mean (K^2 - 1) / (3K).
double expected_accesses_uniform(uint32_t alphabet_size, UpdateScheme scheme);

enum class GeomCase { StandardBest, StandardWorst, RingBuffer };

// Unbounded-geometric approximations: best-case standard p/(1-p), worst
// case K - p/(1-p), ring 2p/(1-p^2).
double expected_accesses_geometric(double ratio, GeomCase which, uint32_t alphabet_size);

// Mean cum-array writes per model update, measured by driving a model
// directly with N generated symbols. Ring models are warmed through their
// fill phase first so the figure reflects the conserved-total regime.
double measure_update_writes(ModelKind kind, uint32_t alphabet_size, Dist dist,
    size_t updates, uint64_t seed, uint8_t total_bits = 12);

// ---- configuration labels ------------------------------------------------

// Compact method labels: search prefix (fwd/log/tab), then Ring / RingShift
// for ring models (Shift only ever follows Ring), then BI for the
// binary-indexed model. In static mode only the bare labels and *RingShift
// (division vs shift core) are meaningful.
std::string config_label(const CoderConfig& config);
CoderConfig config_from_label(Mode mode, std::string_view label, uint8_t total_bits = 12);

std::vector<std::string> valid_labels(Mode mode);

// ---- measured runs ---------------------------------------------------------

struct BenchCase {
    CoderConfig config;
    uint32_t alphabet_size = 32;
    Dist dist = Dist::Uniform;
    size_t length = 1'000'000;
    uint64_t seed = 1;
    int repeats = 5;
    bool timing = true;
};

struct BenchRecord {
    std::string label;
    uint32_t alphabet_size = 0;
    Dist dist = Dist::Uniform;
    Mode mode = Mode::Adaptive;
    uint64_t length = 0;
    double enc_ns_per_sym = 0.0;
    double dec_ns_per_sym = 0.0;
    double cum_writes_per_sym = 0.0;   // encoder-side model writes
    double table_writes_per_sym = 0.0; // decoder-side table writes
    double search_steps_per_sym = 0.0; // decoder-side search probes
    double bitrate_bps = 0.0;
    double entropy_bps = 0.0; // source pmf entropy
    double error_pct = 0.0;
};

// Encodes and decodes one generated sequence in memory; times are the best
// of `repeats` runs on a monotonic clock. A roundtrip mismatch aborts: no
// timing figures are ever reported for a broken coder.
BenchRecord measure_run(const BenchCase& bench_case);

struct MatrixSpec {
    std::vector<Mode> modes { Mode::Static, Mode::Adaptive };
    std::vector<std::string> labels; // empty = every valid label per mode
    std::vector<uint32_t> alphabet_sizes { 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024 };
    std::vector<Dist> dists { Dist::Uniform, Dist::Geometric };
    size_t length = 1'000'000;
    uint64_t seed = 1;
    int repeats = 5;
    uint8_t total_bits = 12;
    bool timing = true;
    unsigned jobs = 1; // >1 only without timing
};

std::vector<BenchRecord> run_matrix(const MatrixSpec& spec, std::ostream* progress = nullptr);

inline constexpr const char* csv_header = "label,K,dist,mode,N,enc_ns_per_sym,dec_ns_per_sym,"
                                          "cum_writes_per_sym,table_writes_per_sym,search_steps_per_sym,"
                                          "bitrate_bps,entropy_bps,error_pct";

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);

// Plot-ready companion: one block per (mode, dist) with columns
// K enc dec enc+dec per label, suitable for log-x per-symbol cost plots.
void write_gnuplot(std::ostream& out, const std::vector<BenchRecord>& records);

} // namespace rcrb

#endif
