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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rcrb/bench.hpp"
#include "rcrb/coder.hpp"
#include "rcrb/datagen.hpp"
#include "rcrb/io.hpp"
#include "rcrb/models.hpp"

namespace {

// Exit codes: 0 ok, 2 usage, 3 format, 4 data, 5 internal.
int exit_code_for(rcrb::Errc code)
{
    switch (code) {
    case rcrb::Errc::invalid_config:
    case rcrb::Errc::undefined_metric:
        return 2;
    case rcrb::Errc::bad_magic:
    case rcrb::Errc::bad_version:
    case rcrb::Errc::infeasible_header:
    case rcrb::Errc::truncated_stream:
    case rcrb::Errc::corrupt_stream:
        return 3;
    case rcrb::Errc::data_error:
    case rcrb::Errc::out_of_range:
    case rcrb::Errc::unencodable_symbol:
    case rcrb::Errc::infeasible_scaling:
    case rcrb::Errc::io_error:
        return 4;
    case rcrb::Errc::capacity_exceeded:
    case rcrb::Errc::invariant_violation:
        return 5;
    }
    return 5;
}

struct ConfigFlags {
    std::string mode = "adaptive";
    std::string model = "ring";
    std::string search = "tab";
    unsigned total_bits = 12;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags)
{
    cmd->add_option("--mode", flags.mode, "Coding mode: static or adaptive")
        ->check(CLI::IsMember({ "static", "adaptive" }));
    cmd->add_option("--model", flags.model, "Statistics model: linear, fenwick or ring")
        ->check(CLI::IsMember({ "linear", "fenwick", "ring" }));
    cmd->add_option("--search", flags.search, "Decoder symbol search: fwd, log or tab")
        ->check(CLI::IsMember({ "fwd", "log", "tab" }));
    cmd->add_option("--total-bits", flags.total_bits, "Total count exponent p, M = 2^p")
        ->check(CLI::Range(8u, 16u));
}

rcrb::SearchKind parse_search(const std::string& name)
{
    if (name == "fwd")
        return rcrb::SearchKind::Fwd;
    if (name == "log")
        return rcrb::SearchKind::Log;
    return rcrb::SearchKind::Tab;
}

rcrb::CoderConfig to_config(const ConfigFlags& flags)
{
    rcrb::CoderConfig config;
    config.mode = flags.mode == "static" ? rcrb::Mode::Static : rcrb::Mode::Adaptive;
    if (flags.model == "linear")
        config.model = rcrb::ModelKind::Linear;
    else if (flags.model == "fenwick")
        config.model = rcrb::ModelKind::Fenwick;
    else
        config.model = rcrb::ModelKind::Ring;
    config.search = parse_search(flags.search);
    config.total_bits = static_cast<uint8_t>(flags.total_bits);
    config.use_shift = rcrb::default_use_shift(config.mode, config.model);
    return config;
}

rcrb::SymbolFile load_input(const std::string& path, bool raw_bytes)
{
    if (!raw_bytes)
        return rcrb::read_rsym(path);
    const std::vector<uint8_t> bytes = rcrb::read_file(path);
    rcrb::SymbolFile file;
    file.alphabet_size = 256;
    file.symbols.assign(bytes.begin(), bytes.end());
    return file;
}

double empirical_entropy(const rcrb::SymbolFile& file)
{
    std::vector<uint64_t> counts(file.alphabet_size, 0);
    for (uint16_t s : file.symbols)
        ++counts[s];
    return rcrb::entropy_of_counts(counts);
}

void print_coding_stats(const rcrb::EncodeStats& stats, double source_entropy)
{
    std::printf("symbols:     %llu\n", static_cast<unsigned long long>(stats.symbol_count));
    std::printf("header:      %llu bytes\n", static_cast<unsigned long long>(stats.header_bytes));
    std::printf("payload:     %llu bytes\n", static_cast<unsigned long long>(stats.payload_bytes));
    if (stats.symbol_count > 0) {
        std::printf("bitrate:     %.6f bit/symbol\n", stats.bitrate_bps());
        std::printf("entropy:     %.6f bit/symbol\n", source_entropy);
        if (source_entropy > 0.0)
            std::printf("error e:     %+.4f %%\n", rcrb::bitrate_error_pct(stats.bitrate_bps(), source_entropy));
    }
}

int run(int argc, char** argv)
{
    CLI::App app { "rcrb - multi-symbol range coder with ring-buffer adaptation" };
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a symbol file");
    std::string gen_dist = "geometric";
    unsigned gen_alphabet = 32;
    uint64_t gen_length = 1'000'000;
    uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--dist", gen_dist, "Distribution: uniform or geometric")
        ->check(CLI::IsMember({ "uniform", "geometric" }));
    gen->add_option("--K", gen_alphabet, "Alphabet size")->check(CLI::Range(1u, 65535u));
    gen->add_option("--N", gen_length, "Sequence length");
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--out", gen_out, "Output .rsym path")->required();

    // encode
    auto* encode = app.add_subcommand("encode", "Encode a symbol file into a coded stream");
    ConfigFlags encode_flags;
    std::string encode_in, encode_out;
    bool encode_raw = false;
    add_config_flags(encode, encode_flags);
    encode->add_option("--in", encode_in, "Input file")->required();
    encode->add_option("--out", encode_out, "Output stream path")->required();
    encode->add_flag("--raw-bytes", encode_raw, "Treat the input as raw bytes (K = 256)");

    // decode
    auto* decode = app.add_subcommand("decode", "Decode a coded stream");
    std::string decode_in, decode_out;
    std::string decode_search;
    bool decode_raw = false;
    decode->add_option("--in", decode_in, "Input stream path")->required();
    decode->add_option("--out", decode_out, "Output file")->required();
    decode->add_option("--search", decode_search, "Override the decoder search strategy")
        ->check(CLI::IsMember({ "fwd", "log", "tab" }));
    decode->add_flag("--raw-bytes", decode_raw, "Write raw bytes instead of a symbol file");

    // verify
    auto* verify = app.add_subcommand("verify", "Encode and decode in memory, compare");
    ConfigFlags verify_flags;
    std::string verify_in;
    bool verify_raw = false;
    add_config_flags(verify, verify_flags);
    verify->add_option("--in", verify_in, "Input file")->required();
    verify->add_flag("--raw-bytes", verify_raw, "Treat the input as raw bytes (K = 256)");

    // bench
    auto* bench = app.add_subcommand("bench", "Run the benchmark matrix and write CSV");
    std::string bench_out;
    std::string bench_mode = "both";
    std::vector<std::string> bench_configs;
    std::vector<unsigned> bench_alphabets;
    std::vector<std::string> bench_dists;
    uint64_t bench_length = 1'000'000;
    uint64_t bench_seed = 1;
    unsigned bench_repeats = 5;
    unsigned bench_total_bits = 12;
    bool bench_no_timing = false;
    unsigned bench_jobs = 1;
    std::string bench_gnuplot;
    bench->add_option("--out", bench_out, "Output CSV path")->required();
    bench->add_option("--mode", bench_mode, "static, adaptive or both")
        ->check(CLI::IsMember({ "static", "adaptive", "both" }));
    bench->add_option("--configs", bench_configs, "Method labels (default: all valid per mode)")->delimiter(',');
    bench->add_option("--K", bench_alphabets, "Alphabet sizes (default: 2..1024 powers of two)")->delimiter(',');
    bench->add_option("--dist", bench_dists, "Distributions (default: uniform,geometric)")->delimiter(',');
    bench->add_option("--N", bench_length, "Symbols per cell");
    bench->add_option("--seed", bench_seed, "Generator seed");
    bench->add_option("--repeats", bench_repeats, "Timing repetitions, best value wins");
    bench->add_option("--total-bits", bench_total_bits, "Total count exponent p")->check(CLI::Range(8u, 16u));
    bench->add_flag("--no-timing", bench_no_timing, "Skip timing, keep counters and bitrates");
    bench->add_option("--jobs", bench_jobs, "Parallel cells (requires --no-timing)");
    bench->add_option("--gnuplot", bench_gnuplot, "Also write a plot-ready data file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (gen->parsed()) {
        std::vector<uint16_t> symbols;
        if (gen_dist == "uniform") {
            symbols = rcrb::gen_uniform(gen_alphabet, gen_length, gen_seed);
        } else {
            rcrb::GeometricSpec spec { gen_alphabet, rcrb::skew_for_alphabet(gen_alphabet), gen_seed };
            symbols = rcrb::gen_geometric(spec, gen_length);
        }
        rcrb::write_rsym(gen_out, gen_alphabet, symbols);
        rcrb::SymbolFile file { gen_alphabet, std::move(symbols) };
        std::printf("wrote %s: K=%u N=%llu\n", gen_out.c_str(), gen_alphabet,
            static_cast<unsigned long long>(file.symbols.size()));
        if (!file.symbols.empty())
            std::printf("entropy:     %.6f bit/symbol\n", empirical_entropy(file));
        return 0;
    }

    if (encode->parsed()) {
        const rcrb::SymbolFile input = load_input(encode_in, encode_raw);
        const rcrb::CoderConfig config = to_config(encode_flags);
        std::vector<uint8_t> stream;
        const rcrb::EncodeStats stats = rcrb::encode_sequence(config, input.alphabet_size, input.symbols, stream);
        rcrb::write_file(encode_out, stream);
        std::printf("config:      %s %s\n", encode_flags.mode.c_str(), rcrb::config_label(config).c_str());
        print_coding_stats(stats, input.symbols.empty() ? 0.0 : empirical_entropy(input));
        return 0;
    }

    if (decode->parsed()) {
        const std::vector<uint8_t> stream = rcrb::read_file(decode_in);
        std::optional<rcrb::SearchKind> override_;
        if (!decode_search.empty())
            override_ = parse_search(decode_search);
        const std::vector<uint16_t> symbols = rcrb::decode_sequence(stream, override_);
        size_t header_pos = 0;
        const rcrb::StreamHeader header = rcrb::read_header(stream, header_pos);
        if (decode_raw) {
            std::vector<uint8_t> bytes;
            bytes.reserve(symbols.size());
            for (size_t n = 0; n < symbols.size(); ++n) {
                if (symbols[n] > 0xFF)
                    throw rcrb::Error(rcrb::Errc::data_error, "symbol " + std::to_string(symbols[n]) + " at position " + std::to_string(n) + " does not fit a byte");
                bytes.push_back(static_cast<uint8_t>(symbols[n]));
            }
            rcrb::write_file(decode_out, bytes);
        } else {
            rcrb::write_rsym(decode_out, header.alphabet_size, symbols);
        }
        std::printf("decoded %llu symbols (K=%u) to %s\n",
            static_cast<unsigned long long>(symbols.size()), header.alphabet_size, decode_out.c_str());
        return 0;
    }

    if (verify->parsed()) {
        const rcrb::SymbolFile input = load_input(verify_in, verify_raw);
        const rcrb::CoderConfig config = to_config(verify_flags);
        std::vector<uint8_t> stream;
        rcrb::encode_sequence(config, input.alphabet_size, input.symbols, stream);
        const std::vector<uint16_t> decoded = rcrb::decode_sequence(stream);
        if (decoded != input.symbols) {
            std::fprintf(stderr, "verify FAILED: roundtrip mismatch\n");
            return 5;
        }
        std::printf("verify OK: %zu symbols, %zu stream bytes\n", input.symbols.size(), stream.size());
        return 0;
    }

    if (bench->parsed()) {
        rcrb::MatrixSpec spec;
        if (bench_mode == "static")
            spec.modes = { rcrb::Mode::Static };
        else if (bench_mode == "adaptive")
            spec.modes = { rcrb::Mode::Adaptive };
        spec.labels = bench_configs;
        if (!bench_alphabets.empty())
            spec.alphabet_sizes.assign(bench_alphabets.begin(), bench_alphabets.end());
        if (!bench_dists.empty()) {
            spec.dists.clear();
            for (const std::string& d : bench_dists) {
                if (d == "uniform")
                    spec.dists.push_back(rcrb::Dist::Uniform);
                else if (d == "geometric")
                    spec.dists.push_back(rcrb::Dist::Geometric);
                else
                    throw rcrb::Error(rcrb::Errc::invalid_config, "unknown distribution '" + d + "'");
            }
        }
        spec.length = bench_length;
        spec.seed = bench_seed;
        spec.repeats = static_cast<int>(bench_repeats);
        spec.total_bits = static_cast<uint8_t>(bench_total_bits);
        spec.timing = !bench_no_timing;
        spec.jobs = bench_jobs;

        const std::vector<rcrb::BenchRecord> records = rcrb::run_matrix(spec);
        std::ofstream csv(bench_out);
        if (!csv)
            throw rcrb::Error(rcrb::Errc::io_error, "cannot open " + bench_out + " for writing");
        rcrb::write_csv(csv, records);
        std::printf("wrote %zu rows to %s\n", records.size(), bench_out.c_str());
        if (!bench_gnuplot.empty()) {
            std::ofstream plot(bench_gnuplot);
            if (!plot)
                throw rcrb::Error(rcrb::Errc::io_error, "cannot open " + bench_gnuplot + " for writing");
            rcrb::write_gnuplot(plot, records);
            std::printf("wrote plot data to %s\n", bench_gnuplot.c_str());
        }
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const rcrb::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 5;
    }
}
