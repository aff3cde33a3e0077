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

#include "rcrb/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "rcrb/datagen.hpp"
#include "rcrb/models.hpp"

namespace rcrb {

std::string_view dist_name(Dist dist)
{
    return dist == Dist::Uniform ? "uniform" : "geometric";
}

double expected_accesses_uniform(uint32_t alphabet_size, UpdateScheme scheme)
{
    if (alphabet_size == 0)
        throw Error(Errc::invalid_config, "alphabet size must be at least 1");
    const double k = static_cast<double>(alphabet_size);
    if (scheme == UpdateScheme::Standard)
        return k - (k - 1.0) / 2.0;
    return (k * k - 1.0) / (3.0 * k);
}

double expected_accesses_geometric(double ratio, GeomCase which, uint32_t alphabet_size)
{
    if (!(ratio > 0.0 && ratio < 1.0))
        throw Error(Errc::invalid_config, "ratio must lie in (0, 1)");
    const double best = ratio / (1.0 - ratio);
    switch (which) {
    case GeomCase::StandardBest:
        return best;
    case GeomCase::StandardWorst:
        return static_cast<double>(alphabet_size) - best;
    case GeomCase::RingBuffer:
        return 2.0 * ratio / (1.0 - ratio * ratio);
    }
    return 0.0;
}

namespace {

    std::vector<uint16_t> generate(Dist dist, uint32_t alphabet_size, size_t length, uint64_t seed)
    {
        if (dist == Dist::Uniform)
            return gen_uniform(alphabet_size, length, seed);
        return gen_geometric({ alphabet_size, skew_for_alphabet(alphabet_size), seed }, length);
    }

    double source_entropy(Dist dist, uint32_t alphabet_size)
    {
        if (dist == Dist::Uniform)
            return std::log2(static_cast<double>(alphabet_size));
        const std::vector<double> pmf = geometric_pmf({ alphabet_size, skew_for_alphabet(alphabet_size), 0 });
        return entropy(pmf);
    }

} // namespace

double measure_update_writes(ModelKind kind, uint32_t alphabet_size, Dist dist,
    size_t updates, uint64_t seed, uint8_t total_bits)
{
    const uint32_t target_total = uint32_t(1) << total_bits;
    AccessCounters stats;
    if (kind == ModelKind::Ring) {
        RingModel model(alphabet_size, target_total, /*with_table=*/false);
        const size_t fill = target_total - alphabet_size;
        const std::vector<uint16_t> warmup = generate(dist, alphabet_size, fill, seed ^ 0xFEEDULL);
        for (uint16_t s : warmup)
            model.update(s);
        const std::vector<uint16_t> symbols = generate(dist, alphabet_size, updates, seed);
        for (uint16_t s : symbols)
            model.update(s, stats);
    } else if (kind == ModelKind::Linear) {
        FrequencyModel model(alphabet_size, target_total);
        const std::vector<uint16_t> symbols = generate(dist, alphabet_size, updates, seed);
        for (uint16_t s : symbols)
            model.update(s, stats);
    } else {
        FenwickModel model(alphabet_size, target_total);
        const std::vector<uint16_t> symbols = generate(dist, alphabet_size, updates, seed);
        for (uint16_t s : symbols)
            model.update(s, stats);
    }
    return static_cast<double>(stats.cum_writes) / static_cast<double>(updates);
}

std::string config_label(const CoderConfig& config)
{
    std::string label;
    switch (config.search) {
    case SearchKind::Fwd:
        label = "fwd";
        break;
    case SearchKind::Log:
        label = "log";
        break;
    case SearchKind::Tab:
        label = "tab";
        break;
    }
    if (config.mode == Mode::Static) {
        if (config.use_shift)
            label += "RingShift";
        return label;
    }
    if (config.model == ModelKind::Ring) {
        label += "Ring";
        if (config.use_shift)
            label += "Shift";
    } else if (config.model == ModelKind::Fenwick) {
        label += "BI";
    }
    return label;
}

CoderConfig config_from_label(Mode mode, std::string_view label, uint8_t total_bits)
{
    const std::string_view original = label;
    CoderConfig config;
    config.mode = mode;
    config.total_bits = total_bits;

    if (label.starts_with("fwd"))
        config.search = SearchKind::Fwd;
    else if (label.starts_with("log"))
        config.search = SearchKind::Log;
    else if (label.starts_with("tab"))
        config.search = SearchKind::Tab;
    else
        throw Error(Errc::invalid_config, "label '" + std::string(original) + "' must start with fwd, log or tab");
    label.remove_prefix(3);

    bool ring = false;
    bool shift = false;
    bool binary_indexed = false;
    if (label.starts_with("Ring")) {
        ring = true;
        label.remove_prefix(4);
        if (label.starts_with("Shift")) {
            shift = true;
            label.remove_prefix(5);
        }
    }
    if (label.starts_with("BI")) {
        binary_indexed = true;
        label.remove_prefix(2);
    }
    if (!label.empty())
        throw Error(Errc::invalid_config, "label '" + std::string(original) + "' has trailing '" + std::string(label) + "'");
    if (ring && binary_indexed)
        throw Error(Errc::invalid_config, "label '" + std::string(original) + "': ring and binary-indexed models are mutually exclusive");

    if (mode == Mode::Static) {
        // Static labels only discriminate the search and the shift core.
        if (binary_indexed)
            throw Error(Errc::invalid_config, "label '" + std::string(original) + "': binary indexing has no static mode");
        if (ring && !shift)
            throw Error(Errc::invalid_config, "label '" + std::string(original) + "': static mode uses 'RingShift' as a unit");
        config.model = ModelKind::Linear;
        config.use_shift = shift;
    } else {
        config.model = binary_indexed ? ModelKind::Fenwick : (ring ? ModelKind::Ring : ModelKind::Linear);
        config.use_shift = shift;
    }
    return config;
}

std::vector<std::string> valid_labels(Mode mode)
{
    static const char* searches[] = { "fwd", "log", "tab" };
    std::vector<std::string> labels;
    for (const char* s : searches) {
        if (mode == Mode::Static) {
            labels.push_back(s);
            labels.push_back(std::string(s) + "RingShift");
        } else {
            labels.push_back(s);
            labels.push_back(std::string(s) + "BI");
            labels.push_back(std::string(s) + "Ring");
            labels.push_back(std::string(s) + "RingShift");
        }
    }
    return labels;
}

BenchRecord measure_run(const BenchCase& bench_case)
{
    const CoderConfig& config = bench_case.config;
    validate_config(config, bench_case.alphabet_size);
    if (bench_case.length == 0)
        throw Error(Errc::invalid_config, "benchmark runs need at least one symbol");

    const std::vector<uint16_t> symbols = generate(bench_case.dist, bench_case.alphabet_size, bench_case.length, bench_case.seed);

    BenchRecord record;
    record.label = config_label(config);
    record.alphabet_size = bench_case.alphabet_size;
    record.dist = bench_case.dist;
    record.mode = config.mode;
    record.length = bench_case.length;
    record.entropy_bps = source_entropy(bench_case.dist, bench_case.alphabet_size);

    using clock = std::chrono::steady_clock;
    const int repeats = bench_case.timing ? std::max(1, bench_case.repeats) : 1;

    double best_enc_ns = std::numeric_limits<double>::infinity();
    std::vector<uint8_t> stream;
    for (int rep = 0; rep < repeats; ++rep) {
        std::vector<uint8_t> out;
        const auto start = clock::now();
        encode_sequence(config, bench_case.alphabet_size, symbols, out);
        const auto stop = clock::now();
        const double ns = std::chrono::duration<double, std::nano>(stop - start).count();
        best_enc_ns = std::min(best_enc_ns, ns);
        stream = std::move(out);
    }

    double best_dec_ns = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < repeats; ++rep) {
        const auto start = clock::now();
        const std::vector<uint16_t> decoded = decode_sequence(stream);
        const auto stop = clock::now();
        if (decoded != symbols)
            throw Error(Errc::invariant_violation, "roundtrip mismatch for " + record.label + " K=" + std::to_string(bench_case.alphabet_size));
        const double ns = std::chrono::duration<double, std::nano>(stop - start).count();
        best_dec_ns = std::min(best_dec_ns, ns);
    }

    const double n = static_cast<double>(bench_case.length);
    if (bench_case.timing) {
        record.enc_ns_per_sym = best_enc_ns / n;
        record.dec_ns_per_sym = best_dec_ns / n;
    }

    // Separate instrumented passes; counting stays out of the timed loops.
    AccessCounters enc_stats;
    std::vector<uint8_t> counted_stream;
    const EncodeStats encode_stats = encode_sequence(config, bench_case.alphabet_size, symbols, counted_stream, enc_stats);
    AccessCounters dec_stats;
    const std::vector<uint16_t> decoded = decode_sequence(counted_stream, std::nullopt, dec_stats);
    if (decoded != symbols)
        throw Error(Errc::invariant_violation, "roundtrip mismatch for " + record.label);

    record.cum_writes_per_sym = static_cast<double>(enc_stats.cum_writes) / n;
    record.table_writes_per_sym = static_cast<double>(dec_stats.table_writes) / n;
    record.search_steps_per_sym = static_cast<double>(dec_stats.search_steps) / n;
    record.bitrate_bps = encode_stats.bitrate_bps();
    record.error_pct = bitrate_error_pct(record.bitrate_bps, record.entropy_bps);
    return record;
}

std::vector<BenchRecord> run_matrix(const MatrixSpec& spec, std::ostream* progress)
{
    if (spec.jobs > 1 && spec.timing)
        throw Error(Errc::invalid_config, "parallel matrix runs are only available without timing");

    struct Cell {
        Mode mode;
        std::string label;
        uint32_t alphabet_size;
        Dist dist;
    };
    std::vector<Cell> cells;
    for (Mode mode : spec.modes) {
        const std::vector<std::string> labels = spec.labels.empty() ? valid_labels(mode) : spec.labels;
        for (const std::string& label : labels) {
            // Validate eagerly so a bad label names itself before any work runs.
            config_from_label(mode, label, spec.total_bits);
            for (uint32_t alphabet_size : spec.alphabet_sizes)
                for (Dist dist : spec.dists)
                    cells.push_back({ mode, label, alphabet_size, dist });
        }
    }

    std::vector<BenchRecord> records(cells.size());
    std::atomic<size_t> next { 0 };
    std::atomic<bool> failed { false };
    std::string first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            const size_t idx = next.fetch_add(1);
            if (idx >= cells.size() || failed.load())
                return;
            const Cell& cell = cells[idx];
            try {
                BenchCase bench_case;
                bench_case.config = config_from_label(cell.mode, cell.label, spec.total_bits);
                bench_case.alphabet_size = cell.alphabet_size;
                bench_case.dist = cell.dist;
                bench_case.length = spec.length;
                bench_case.seed = spec.seed;
                bench_case.repeats = spec.repeats;
                bench_case.timing = spec.timing;
                records[idx] = measure_run(bench_case);
                if (progress) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    *progress << records[idx].label << " K=" << cell.alphabet_size
                              << " " << dist_name(cell.dist) << " done\n";
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true))
                    first_error = "matrix cell " + cell.label + " K=" + std::to_string(cell.alphabet_size)
                        + " " + std::string(dist_name(cell.dist)) + " failed: " + e.what();
            }
        }
    };

    const unsigned jobs = std::max(1u, spec.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < jobs; ++t)
            threads.emplace_back(worker);
        for (std::thread& t : threads)
            t.join();
    }
    if (failed.load())
        throw Error(Errc::invariant_violation, first_error);
    return records;
}

namespace {

    void write_record(std::ostream& out, const BenchRecord& r)
    {
        char line[512];
        std::snprintf(line, sizeof line, "%s,%u,%s,%s,%llu,%.3f,%.3f,%.4f,%.4f,%.4f,%.6f,%.6f,%.4f",
            r.label.c_str(), r.alphabet_size, std::string(dist_name(r.dist)).c_str(),
            r.mode == Mode::Static ? "static" : "adaptive",
            static_cast<unsigned long long>(r.length),
            r.enc_ns_per_sym, r.dec_ns_per_sym,
            r.cum_writes_per_sym, r.table_writes_per_sym, r.search_steps_per_sym,
            r.bitrate_bps, r.entropy_bps, r.error_pct);
        out << line << '\n';
    }

} // namespace

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records)
{
    out << csv_header << '\n';
    for (const BenchRecord& r : records)
        write_record(out, r);
}

void write_gnuplot(std::ostream& out, const std::vector<BenchRecord>& records)
{
    // Group into (mode, dist) blocks; one row per K, three columns per label.
    std::map<std::pair<int, int>, std::map<uint32_t, std::map<std::string, const BenchRecord*>>> blocks;
    for (const BenchRecord& r : records)
        blocks[{ static_cast<int>(r.mode), static_cast<int>(r.dist) }][r.alphabet_size][r.label] = &r;

    bool first = true;
    for (const auto& [key, by_k] : blocks) {
        if (!first)
            out << "\n\n";
        first = false;
        const char* mode = key.first == static_cast<int>(Mode::Static) ? "static" : "adaptive";
        const std::string dist = std::string(dist_name(static_cast<Dist>(key.second)));

        std::vector<std::string> labels;
        for (const auto& [k, by_label] : by_k)
            for (const auto& [label, rec] : by_label)
                if (std::find(labels.begin(), labels.end(), label) == labels.end())
                    labels.push_back(label);

        out << "# mode=" << mode << " dist=" << dist << "\n# K";
        for (const std::string& label : labels)
            out << ' ' << label << "_enc " << label << "_dec " << label << "_sum";
        out << '\n';
        for (const auto& [k, by_label] : by_k) {
            out << k;
            for (const std::string& label : labels) {
                const auto it = by_label.find(label);
                if (it == by_label.end()) {
                    out << " - - -";
                } else {
                    const BenchRecord& r = *it->second;
                    char cols[128];
                    std::snprintf(cols, sizeof cols, " %.3f %.3f %.3f",
                        r.enc_ns_per_sym, r.dec_ns_per_sym, r.enc_ns_per_sym + r.dec_ns_per_sym);
                    out << cols;
                }
            }
            out << '\n';
        }
    }
}

} // namespace rcrb
