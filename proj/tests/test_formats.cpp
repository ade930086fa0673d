#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "wgm/cli.hpp"
#include "wgm/dbg_merge.hpp"

using namespace wgm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("wgm-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
    void write(const std::string& name, const std::string& content) const {
        std::ofstream out(file(name), std::ios::binary);
        out << content;
    }
    std::string read(const std::string& name) const {
        std::ifstream in(file(name), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
};

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("build from line text and dump") {
    TempDir tmp;
    tmp.write("in.txt", "TACACT\nTACTCG\nGACTCA\n");
    auto r = run_cli({"build", tmp.file("in.txt"), "-k", "3", "-o", tmp.file("g.boss")});
    CHECK(r.code == 0);
    CHECK(r.out.find("nodes 13") != std::string::npos);

    auto d = run_cli({"dump", tmp.file("g.boss")});
    CHECK(d.code == 0);
    // one line per W position: index label wminus last
    std::istringstream lines(d.out);
    std::string line;
    size_t count = 0;
    while (std::getline(lines, line)) ++count;
    CHECK(count == 16);
    CHECK(d.out.substr(0, 8) == "1 G 1 0\n");
}

TEST_CASE("build from FASTA uppercases and validates") {
    TempDir tmp;
    tmp.write("in.fa", ">r1\ntacact\n>r2\nTACTCG\n>r3\nGACT\nCA\n");
    auto r = run_cli({"build", tmp.file("in.fa"), "-k", "3", "-o", tmp.file("g.boss")});
    CHECK(r.code == 0);
    CHECK(r.out.find("nodes 13") != std::string::npos);

    tmp.write("bad.fa", ">r1\nTACNCT\n");
    auto b = run_cli({"build", tmp.file("bad.fa"), "-k", "3", "-o", tmp.file("x.boss")});
    CHECK(b.code == 2);
    CHECK(b.err.find("position 4") != std::string::npos);
}

TEST_CASE("empty input file fails with exit 2") {
    TempDir tmp;
    tmp.write("empty.txt", "");
    auto r = run_cli({"build", tmp.file("empty.txt"), "-k", "2", "-o", tmp.file("x.boss")});
    CHECK(r.code == 2);
}

TEST_CASE("merge matches a direct build of the union") {
    TempDir tmp;
    tmp.write("a.txt", "TACACT\n");
    tmp.write("b.txt", "TACTCG\nGACTCA\n");
    tmp.write("ab.txt", "TACACT\nTACTCG\nGACTCA\n");
    REQUIRE(run_cli({"build", tmp.file("a.txt"), "-k", "3", "-o", tmp.file("a.boss")}).code == 0);
    REQUIRE(run_cli({"build", tmp.file("b.txt"), "-k", "3", "-o", tmp.file("b.boss")}).code == 0);
    REQUIRE(run_cli({"build", tmp.file("ab.txt"), "-k", "3", "-o", tmp.file("ab.boss")}).code == 0);

    auto m = run_cli({"merge", tmp.file("a.boss"), tmp.file("b.boss"), "-o", tmp.file("m.boss")});
    CHECK(m.code == 0);
    CHECK(m.out.find("working space:") != std::string::npos);
    CHECK(tmp.read("m.boss") == tmp.read("ab.boss"));

    // merging a file with itself is the identity
    auto s = run_cli({"merge", tmp.file("a.boss"), tmp.file("a.boss"), "-o", tmp.file("s.boss")});
    CHECK(s.code == 0);
    CHECK(tmp.read("s.boss") == tmp.read("a.boss"));
}

TEST_CASE("order mismatch exits 3") {
    TempDir tmp;
    tmp.write("a.txt", "TACACT\n");
    REQUIRE(run_cli({"build", tmp.file("a.txt"), "-k", "3", "-o", tmp.file("k3.boss")}).code == 0);
    REQUIRE(run_cli({"build", tmp.file("a.txt"), "-k", "4", "-o", tmp.file("k4.boss")}).code == 0);
    auto r = run_cli({"merge", tmp.file("k3.boss"), tmp.file("k4.boss"), "-o", tmp.file("m.boss")});
    CHECK(r.code == 3);
    CHECK(r.err.find("order mismatch") != std::string::npos);
}

TEST_CASE("vo merge writes little-endian u16 lcs entries") {
    TempDir tmp;
    tmp.write("a.txt", "TACACT\n");
    tmp.write("b.txt", "GACTCA\n");
    REQUIRE(run_cli({"build", tmp.file("a.txt"), "-k", "3", "-o", tmp.file("a.boss")}).code == 0);
    REQUIRE(run_cli({"build", tmp.file("b.txt"), "-k", "3", "-o", tmp.file("b.boss")}).code == 0);
    auto r = run_cli({"merge", tmp.file("a.boss"), tmp.file("b.boss"), "-o", tmp.file("m.boss"),
                      "--mode", "vo", "--lcs", tmp.file("m.lcs")});
    CHECK(r.code == 0);

    std::ifstream mb(tmp.file("m.boss"), std::ios::binary);
    BossGraph m = BossGraph::deserialize(mb);
    std::string raw = tmp.read("m.lcs");
    REQUIRE(raw.size() == 2 * (m.n - 1));
    for (size_t i = 0; i + 1 < raw.size(); i += 2) {
        uint16_t v = static_cast<uint8_t>(raw[i]) | (static_cast<uint8_t>(raw[i + 1]) << 8);
        CHECK(v <= m.k - 1);
    }
}

TEST_CASE("colored merge round-trips matrices through .cmat files") {
    TempDir tmp;
    tmp.write("a.txt", "TACACT\n");
    tmp.write("b.txt", "GACTCA\n");
    REQUIRE(run_cli({"build", tmp.file("a.txt"), "-k", "3", "-o", tmp.file("a.boss")}).code == 0);
    REQUIRE(run_cli({"build", tmp.file("b.txt"), "-k", "3", "-o", tmp.file("b.boss")}).code == 0);

    std::ifstream fa(tmp.file("a.boss"), std::ios::binary), fb(tmp.file("b.boss"), std::ios::binary);
    BossGraph ga = BossGraph::deserialize(fa), gb = BossGraph::deserialize(fb);
    ColorMatrix ma(ga.m(), 2), mb(gb.m(), 1);
    for (uint64_t r = 0; r < ma.rows; ++r)
        if (ga.W.sym(r + 1) != 0) ma.set(r, r % 2);
    for (uint64_t r = 0; r < mb.rows; ++r)
        if (gb.W.sym(r + 1) != 0) mb.set(r, 0);
    {
        std::ofstream oa(tmp.file("a.cmat"), std::ios::binary), ob(tmp.file("b.cmat"), std::ios::binary);
        ma.serialize(oa);
        mb.serialize(ob);
    }

    auto r = run_cli({"merge", tmp.file("a.boss"), tmp.file("b.boss"), "-o", tmp.file("m.boss"),
                      "--mode", "colored", "--colors", tmp.file("a.cmat"), tmp.file("b.cmat"),
                      "--color-out", tmp.file("m.cmat")});
    CHECK(r.code == 0);
    CHECK(r.out.find("colors 3") != std::string::npos);

    std::ifstream mc(tmp.file("m.cmat"), std::ios::binary);
    ColorMatrix merged = ColorMatrix::deserialize(mc);
    CHECK(merged.cols == 3);
    std::ifstream mg(tmp.file("m.boss"), std::ios::binary);
    CHECK(merged.rows == BossGraph::deserialize(mg).m());
}

TEST_CASE("cmat round trip with ragged widths") {
    for (uint32_t cols : {1u, 7u, 8u, 9u, 63u, 65u}) {
        ColorMatrix m(5, cols);
        for (uint64_t r = 0; r < 5; ++r)
            for (uint32_t c = 0; c < cols; c += r + 1) m.set(r, c);
        std::stringstream buf;
        m.serialize(buf);
        CHECK(ColorMatrix::deserialize(buf) == m);
    }
}

TEST_CASE("wg validate on text automata") {
    TempDir tmp;
    tmp.write("good.nfa", "nodes 3 source 1\nedge 1 2 a\nedge 2 3 b\nfinals 3\n");
    auto ok = run_cli({"wg", "validate", tmp.file("good.nfa")});
    CHECK(ok.code == 0);
    CHECK(ok.out == "OK\n");

    tmp.write("bad.nfa", "nodes 3 source 1\nedge 1 3 a\nedge 2 2 a\nfinals 3\n");
    auto bad = run_cli({"wg", "validate", tmp.file("bad.nfa")});
    CHECK(bad.code == 4);
    CHECK(bad.out.find("VIOLATION") == 0);

    tmp.write("broken.nfa", "nodes x\n");
    CHECK(run_cli({"wg", "validate", tmp.file("broken.nfa")}).code == 2);
}

TEST_CASE("wg merge-sat on the paper fixtures") {
    TempDir tmp;
    tmp.write("an.nfa", "nodes 2 source 1\nedge 1 2 a\nedge 2 2 a\nfinals 2\n");
    tmp.write("anb.nfa", "nodes 3 source 1\nedge 1 2 a\nedge 2 2 a\nedge 2 3 b\nfinals 3\n");
    auto unsat = run_cli({"wg", "merge-sat", tmp.file("an.nfa"), tmp.file("anb.nfa"), "--dump-cnf",
                          tmp.file("inst.cnf")});
    CHECK(unsat.code == 4);
    CHECK(unsat.out == "UNSAT\n");
    CHECK(tmp.read("inst.cnf").substr(0, 5) == "p cnf");

    tmp.write("chain.nfa", "nodes 3 source 1\nedge 1 2 a\nedge 2 3 b\nfinals 3\n");
    tmp.write("fan.nfa", "nodes 3 source 1\nedge 1 2 a\nedge 1 3 b\nfinals 2 3\n");
    auto sat = run_cli({"wg", "merge-sat", tmp.file("chain.nfa"), tmp.file("fan.nfa"), "-o",
                        tmp.file("u.wg")});
    CHECK(sat.code == 0);
    CHECK(sat.out.substr(0, 4) == "SAT ");

    // the emitted union must be a loadable, valid Wheeler graph
    auto v = run_cli({"wg", "validate", tmp.file("u.wg")});
    CHECK(v.code == 0);
}

TEST_CASE("wg merge-refine outcomes") {
    TempDir tmp;
    tmp.write("an.nfa", "nodes 2 source 1\nedge 1 2 a\nedge 2 2 a\nfinals 2\n");
    tmp.write("anb.nfa", "nodes 3 source 1\nedge 1 2 a\nedge 2 2 a\nedge 2 3 b\nfinals 3\n");
    auto no = run_cli({"wg", "merge-refine", tmp.file("an.nfa"), tmp.file("anb.nfa")});
    CHECK(no.code == 4);
    CHECK(no.out == "NOORDER\n");

    tmp.write("chain.nfa", "nodes 3 source 1\nedge 1 2 a\nedge 2 3 b\nfinals 3\n");
    tmp.write("fan.nfa", "nodes 3 source 1\nedge 1 2 a\nedge 1 3 b\nfinals 2 3\n");
    auto red = run_cli({"wg", "merge-refine", tmp.file("chain.nfa"), tmp.file("fan.nfa"), "-o",
                        tmp.file("u.wg")});
    CHECK(red.code == 0);
    CHECK(red.out.find("REDUCED 4 sets") == 0);
    CHECK(red.out.find("P1 = a2 b2") != std::string::npos);
    CHECK(run_cli({"wg", "validate", tmp.file("u.wg")}).code == 0);

    tmp.write("c1.nfa", "nodes 3 source 1\nedge 1 2 a\nedge 2 3 b\nfinals 3\n");
    tmp.write("c2.nfa", "nodes 2 source 1\nedge 1 2 c\nfinals 2\n");
    auto exact = run_cli({"wg", "merge-refine", tmp.file("c1.nfa"), tmp.file("c2.nfa")});
    CHECK(exact.code == 0);
    CHECK(exact.out.substr(0, 6) == "EXACT ");
}

TEST_CASE("verify runs clean on a fixed seed") {
    auto r = run_cli({"verify", "--cases", "5", "--seed", "42"});
    CHECK(r.code == 0);
    CHECK(r.out.find("ok") != std::string::npos);
}

TEST_CASE("a thousand random strings survive build, save and reload") {
    TempDir tmp;
    std::mt19937_64 rng(1009);
    std::ostringstream text;
    const char* letters = "ACGT";
    for (int i = 0; i < 1000; ++i) {
        size_t len = 1 + rng() % 24;
        for (size_t p = 0; p < len; ++p) text << letters[rng() % 4];
        text << "\n";
    }
    tmp.write("big.txt", text.str());
    auto r = run_cli({"build", tmp.file("big.txt"), "-k", "5", "-o", tmp.file("big.boss")});
    REQUIRE(r.code == 0);

    std::ifstream in(tmp.file("big.boss"), std::ios::binary);
    BossGraph g = BossGraph::deserialize(in);
    std::stringstream buf;
    g.serialize(buf);
    CHECK(buf.str() == tmp.read("big.boss"));
    CHECK(BossGraph::deserialize(buf) == g);
}

TEST_CASE("deterministic outputs") {
    TempDir tmp;
    tmp.write("a.txt", "TACACT\nGACTCA\n");
    REQUIRE(run_cli({"build", tmp.file("a.txt"), "-k", "4", "-o", tmp.file("x.boss")}).code == 0);
    REQUIRE(run_cli({"build", tmp.file("a.txt"), "-k", "4", "-o", tmp.file("y.boss")}).code == 0);
    CHECK(tmp.read("x.boss") == tmp.read("y.boss"));
}
