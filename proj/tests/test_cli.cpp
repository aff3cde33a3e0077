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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "rcrb/io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = RCRB_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("rcrb-cli-test-" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args)
{
    const std::string command = cli + " " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

bool same_bytes(const std::string& a, const std::string& b)
{
    return rcrb::read_file(a) == rcrb::read_file(b);
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("gen, encode, decode roundtrip through files")
{
    TempDir dir;
    const std::string rsym = dir.file("data.rsym");
    const std::string stream = dir.file("data.rcrb");
    const std::string back = dir.file("back.rsym");

    REQUIRE(run("gen --dist geometric --K 32 --N 50000 --seed 7 --out " + rsym) == 0);
    REQUIRE(run("encode --mode adaptive --model ring --search tab --in " + rsym + " --out " + stream) == 0);
    REQUIRE(run("decode --in " + stream + " --out " + back) == 0);
    CHECK(same_bytes(rsym, back));

    SUBCASE("decode accepts a strategy override and produces identical files")
    {
        const std::string fwd = dir.file("fwd.rsym");
        const std::string log = dir.file("log.rsym");
        REQUIRE(run("decode --search fwd --in " + stream + " --out " + fwd) == 0);
        REQUIRE(run("decode --search log --in " + stream + " --out " + log) == 0);
        CHECK(same_bytes(back, fwd));
        CHECK(same_bytes(back, log));
    }

    SUBCASE("static mode roundtrips too")
    {
        const std::string stat = dir.file("static.rcrb");
        const std::string back2 = dir.file("back2.rsym");
        REQUIRE(run("encode --mode static --total-bits 13 --in " + rsym + " --out " + stat) == 0);
        REQUIRE(run("decode --in " + stat + " --out " + back2) == 0);
        CHECK(same_bytes(rsym, back2));
    }
}

TEST_CASE("verify succeeds across models")
{
    TempDir dir;
    const std::string rsym = dir.file("v.rsym");
    REQUIRE(run("gen --dist uniform --K 16 --N 20000 --seed 3 --out " + rsym) == 0);
    CHECK(run("verify --mode adaptive --model linear --search fwd --in " + rsym) == 0);
    CHECK(run("verify --mode adaptive --model fenwick --search log --in " + rsym) == 0);
    CHECK(run("verify --mode adaptive --model ring --search tab --in " + rsym) == 0);
    CHECK(run("verify --mode static --in " + rsym) == 0);
}

TEST_CASE("raw byte files code as a 256-symbol alphabet")
{
    TempDir dir;
    const std::string raw = dir.file("blob.bin");
    {
        std::ofstream out(raw, std::ios::binary);
        for (int i = 0; i < 10000; ++i)
            out.put(static_cast<char>((i * 31 + i / 17) & 0xFF));
    }
    const std::string stream = dir.file("blob.rcrb");
    const std::string back = dir.file("blob.out");
    REQUIRE(run("encode --raw-bytes --mode adaptive --model ring --in " + raw + " --out " + stream) == 0);
    REQUIRE(run("decode --raw-bytes --in " + stream + " --out " + back) == 0);
    CHECK(same_bytes(raw, back));
}

TEST_CASE("exit codes distinguish the failure classes")
{
    TempDir dir;
    const std::string rsym = dir.file("e.rsym");
    REQUIRE(run("gen --dist uniform --K 4 --N 1000 --seed 1 --out " + rsym) == 0);

    SUBCASE("usage errors exit with 2")
    {
        CHECK(run("encode --mode sideways --in " + rsym + " --out " + dir.file("x")) == 2);
        CHECK(run("nonsense") == 2);
        CHECK(run("encode --mode static --model fenwick --in " + rsym + " --out " + dir.file("x")) == 2);
    }

    SUBCASE("format errors exit with 3")
    {
        const std::string stream = dir.file("e.rcrb");
        REQUIRE(run("encode --in " + rsym + " --out " + stream) == 0);
        auto bytes = rcrb::read_file(stream);
        bytes[0] ^= 0xFF;
        rcrb::write_file(stream, bytes);
        CHECK(run("decode --in " + stream + " --out " + dir.file("y")) == 3);

        auto truncated = rcrb::read_file(rsym);
        // a valid stream cut short
        REQUIRE(run("encode --in " + rsym + " --out " + stream) == 0);
        auto good = rcrb::read_file(stream);
        good.resize(good.size() - 3);
        rcrb::write_file(stream, good);
        CHECK(run("decode --in " + stream + " --out " + dir.file("z")) == 3);
    }

    SUBCASE("data errors exit with 4")
    {
        // hand-build a symbol file whose payload violates its alphabet
        std::vector<uint16_t> symbols(10, 1);
        auto bytes = rcrb::serialize_rsym(4, symbols);
        bytes[14] = 9; // first symbol -> 9, outside K=4
        const std::string bad = dir.file("bad.rsym");
        rcrb::write_file(bad, bytes);
        CHECK(run("encode --in " + bad + " --out " + dir.file("w")) == 4);
        CHECK(run("encode --in " + dir.file("missing.rsym") + " --out " + dir.file("v")) == 4);
    }
}

TEST_CASE("bench writes the CSV matrix")
{
    TempDir dir;
    const std::string csv = dir.file("bench.csv");
    const std::string plot = dir.file("bench.dat");
    REQUIRE(run("bench --mode adaptive --configs tabRingShift,log --K 8,16 --dist geometric --N 2000 "
                "--no-timing --out "
            + csv + " --gnuplot " + plot)
        == 0);

    std::ifstream in(csv);
    REQUIRE(in.good());
    std::string header_line;
    std::getline(in, header_line);
    CHECK(header_line == "label,K,dist,mode,N,enc_ns_per_sym,dec_ns_per_sym,cum_writes_per_sym,"
                         "table_writes_per_sym,search_steps_per_sym,bitrate_bps,entropy_bps,error_pct");
    size_t rows = 0;
    for (std::string line; std::getline(in, line);)
        if (!line.empty())
            ++rows;
    CHECK(rows == 4); // 2 labels x 2 alphabet sizes x 1 dist

    CHECK(run("bench --mode adaptive --configs tabRingShiftBI --K 8 --N 100 --no-timing --out " + csv) == 2);

    std::ifstream plot_in(plot);
    REQUIRE(plot_in.good());
    std::string first;
    std::getline(plot_in, first);
    CHECK(first.find("# mode=adaptive dist=geometric") == 0);
}

TEST_SUITE_END();
