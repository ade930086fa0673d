#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "wgm/boss.hpp"
#include "wgm/oracle.hpp"
#include "wgm/testgen.hpp"

using namespace wgm;

namespace {

std::string colex_key(const std::string& s) { return {s.rbegin(), s.rend()}; }

}  // namespace

TEST_CASE("two-node chain from a single string") {
    // {"AC"}, k=2 over ACGT: nodes $$, $A, AC; W = "AC$"
    BossGraph g = build_boss({fixtures::dna("AC")}, 2, 4);
    CHECK(g.n == 3);
    CHECK(fixtures::dna_letters(g.W.to_string()) == "AC$");
    CHECK(g.last.to_string() == "111");
    CHECK(g.wminus.to_string() == "110");
    CHECK(!validate_boss(g));

    CHECK(node_kmer(g, 1) == fixtures::dna("$$"));
    CHECK(node_kmer(g, 2) == fixtures::dna("$A"));
    CHECK(node_kmer(g, 3) == fixtures::dna("AC"));
    CHECK(forward(g, 1) == 2);
    CHECK(forward(g, 2) == 3);
    CHECK_THROWS(forward(g, 3));
}

TEST_CASE("single symbol, k = 1") {
    BossGraph g = build_boss({fixtures::dna("A")}, 1, 4);
    CHECK(g.n == 2);
    CHECK(fixtures::dna_letters(g.W.to_string()) == "A$");
    CHECK(g.last.to_string() == "11");
    CHECK(g.wminus.to_string() == "10");
}

TEST_CASE("construction errors") {
    CHECK_THROWS(build_boss({}, 2, 4));
    CHECK_THROWS(build_boss({std::string()}, 2, 4));
    std::string bad{char(5)};
    CHECK_THROWS(build_boss({bad}, 2, 4));
}

TEST_CASE("node_kmer values are distinct and colex sorted") {
    BossGraph g = build_boss(fixtures::running_collection(), 3, 4);
    auto kmers = oracle::all_kmers(g);
    for (size_t i = 1; i < kmers.size(); ++i)
        CHECK(colex_key(kmers[i - 1]) < colex_key(kmers[i]));
}

TEST_CASE("LF is an order preserving bijection onto 2..n") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        uint32_t sigma = 2 + rng() % 5;
        uint32_t k = 2 + rng() % 7;
        auto coll = testgen::random_collection(rng, sigma, 10, 20);
        BossGraph g = build_boss(coll, k, sigma);

        std::vector<uint64_t> dests;
        std::vector<std::pair<uint8_t, uint64_t>> keyed;   // (label, position)
        for (uint64_t i = 1; i <= g.m(); ++i) {
            if (!g.wminus.bit(i)) continue;
            dests.push_back(forward(g, i));
            keyed.push_back({g.W.sym(i), i});
        }
        auto sorted = dests;
        std::sort(sorted.begin(), sorted.end());
        for (size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i + 2);

        // LF monotonicity: sorting by (label, position) sorts the
        // destinations
        std::vector<size_t> idx(keyed.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](size_t a, size_t b) { return keyed[a] < keyed[b]; });
        for (size_t i = 1; i < idx.size(); ++i)
            CHECK(dests[idx[i - 1]] < dests[idx[i]]);

        // incoming labels match the last k-mer symbol
        for (uint64_t i = 1; i <= g.m(); ++i)
            if (g.wminus.bit(i))
                CHECK(node_kmer(g, forward(g, i)).back() == static_cast<char>(g.W.sym(i)));
    }
}

TEST_CASE("agreement with the naive oracle on random collections") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 200; ++t) {
        uint32_t sigma = 2 + rng() % 5;
        uint32_t k = 2 + rng() % 7;
        auto coll = testgen::random_collection(rng, sigma, 30, 25);
        BossGraph built = build_boss(coll, k, sigma);
        BossGraph ref = oracle::naive_boss(coll, k, sigma);
        CAPTURE(t);
        CHECK(built == ref);
        CHECK(!validate_boss(built));
    }
}

TEST_CASE("validator flags constructed violations") {
    BossGraph g = build_boss(fixtures::running_collection(), 3, 4);

    SUBCASE("duplicate label in a segment") {
        BossGraph bad = g;
        // node 1 of the running example has two distinct labels; forge a copy
        std::vector<uint8_t> w;
        for (uint64_t i = 1; i <= g.m(); ++i) w.push_back(g.W.sym(i));
        w[1] = w[0];
        bad.W = SymSeq(w, g.sigma);
        auto v = validate_boss(bad);
        REQUIRE(v.has_value());
        CHECK(v->position == 2);
    }

    SUBCASE("flipped last bit breaks the node count") {
        BossGraph bad = g;
        std::vector<bool> last;
        for (uint64_t i = 1; i <= g.m(); ++i) last.push_back(g.last.bit(i));
        last[4] = !last[4];
        bad.last = BitVec(last);
        CHECK(validate_boss(bad).has_value());
    }
}

TEST_CASE("serialization round trip") {
    BossGraph g = build_boss(fixtures::running_collection(), 3, 4);
    std::stringstream buf;
    g.serialize(buf);
    BossGraph h = BossGraph::deserialize(buf);
    CHECK(g == h);
    CHECK(h.k == 3);
    CHECK(forward(h, 1) == forward(g, 1));
}
