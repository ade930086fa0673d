#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "wgm/boss.hpp"
#include "wgm/oracle.hpp"
#include "wgm/testgen.hpp"
#include "wgm/wheeler.hpp"

using namespace wgm;

TEST_CASE("golden arrays of the order-3 running example") {
    BossGraph g = build_boss(fixtures::running_collection(), 3, 4);
    CHECK(g.n == 13);
    WheelerGraph wg = boss_to_wheeler(g);
    CHECK(wg.n == 13);
    CHECK(wg.m == 14);
    CHECK(wg.I.to_string() == "101010101010101010101010001");
    CHECK(wg.O.to_string() == "001011010101010010010110101");
    // node 1's edges target $$G and $$T, so its sorted segment reads "GT"
    CHECK(fixtures::dna_letters(wg.L.to_string()) == "GTCCCTTATAGAAC");
    CHECK(wg.Cp.to_string() == "10001000101000");
}

TEST_CASE("single node, no edges") {
    Nfa a;
    a.n = 1;
    a.source = 0;
    a.sigma = 2;
    a.alpha = "ab";
    a.finals = {true};
    WheelerGraph g = encode_wheeler(a, identity_order(1));
    CHECK(g.I.to_string() == "1");
    CHECK(g.O.to_string() == "1");
    CHECK(g.L.size() == 0);
    CHECK(g.Cp.size() == 0);
    Nfa back = decode_wheeler(g);
    CHECK(back.n == 1);
    CHECK(back.edges.empty());
}

TEST_CASE("navigation walkthrough on the eight-node graph") {
    Nfa a = fixtures::walkthrough_graph();
    REQUIRE(!validate_wheeler(a, identity_order(a.n)));
    WheelerGraph g = encode_wheeler(a, identity_order(a.n));

    // in-label classes: nodes 2-4 take a, 5-6 take b, 7-8 take c
    auto lambda = incoming_labels(a);
    for (int64_t v : {1, 2, 3}) CHECK(lambda[v] == 1);
    for (int64_t v : {4, 5}) CHECK(lambda[v] == 2);
    for (int64_t v : {6, 7}) CHECK(lambda[v] == 3);

    BackwardStep s = backward_min(g, 5);
    CHECK(s.kpos == 10);
    CHECK(s.c == 2);
    CHECK(s.j == 1);
    CHECK(s.h == 3);
    CHECK(s.u == 1);

    CHECK_THROWS_AS(backward_min(g, 1), std::invalid_argument);
}

TEST_CASE("backward_min agrees with decoded adjacency") {
    BossGraph boss = build_boss(fixtures::running_collection(), 3, 4);
    WheelerGraph g = boss_to_wheeler(boss);
    Nfa a = decode_wheeler(g);
    for (uint64_t v = 2; v <= g.n; ++v) {
        int64_t lo = INT64_MAX, hi = INT64_MIN;
        for (const auto& e : a.edges)
            if (e.to == static_cast<int64_t>(v - 1)) {
                lo = std::min(lo, e.from);
                hi = std::max(hi, e.from);
            }
        if (lo == INT64_MAX) continue;
        CHECK(pred_min(g, v) == static_cast<uint64_t>(lo + 1));
        CHECK(pred_max(g, v) == static_cast<uint64_t>(hi + 1));
    }
}

TEST_CASE("encode/decode round trip on BOSS-derived graphs") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 40; ++t) {
        uint32_t sigma = 2 + rng() % 4;
        uint32_t k = 2 + rng() % 5;
        auto coll = testgen::random_collection(rng, sigma, 8, 18);
        WheelerGraph g = boss_to_wheeler(build_boss(coll, k, sigma));
        CHECK(!validate_wheeler(decode_wheeler(g), identity_order(g.n)));
        WheelerGraph h = encode_wheeler(decode_wheeler(g), identity_order(g.n));
        CHECK(g.I == h.I);
        CHECK(g.O == h.O);
        CHECK(g.L == h.L);
        CHECK(g.Cp == h.Cp);

        size_t used = 0;
        for (uint8_t c = 1; c <= g.sigma; ++c) used += g.L.count(c) > 0;
        CHECK(g.Cp.ones() == used);
    }
}

TEST_CASE("boss_to_wheeler drops exactly the $ markers") {
    BossGraph g = build_boss(fixtures::running_collection(), 3, 4);
    WheelerGraph wg = boss_to_wheeler(g);
    uint64_t dollars = g.W.count(0);
    CHECK(wg.m == g.m() - dollars);
}

TEST_CASE("validator rejects and reports edge pairs") {
    Nfa a = fixtures::parse(
        "nodes 3 source 1\n"
        "edge 1 3 a\n"
        "edge 2 2 a\n"
        "finals 3\n");
    // with order 1<2<3 the a-edges cross: sources 1<2 but targets 3>2
    auto v = validate_wheeler(a, identity_order(3));
    REQUIRE(v.has_value());
    REQUIRE(v->edges.has_value());

    // the same graph ordered 1<3<2 passes
    CHECK(!validate_wheeler(a, {0, 2, 1}));
}

TEST_CASE("union automaton of the a^n / a^n b pair") {
    Nfa a0 = fixtures::an_automaton();
    Nfa a1 = fixtures::anb_automaton();
    UnionNfa u = union_automaton(a0, a1);
    CHECK(u.nfa.n == 4);   // s, v*, v, w
    CHECK(u.origin[0] == -1);
    CHECK(u.origin[1] == 0);
    CHECK(u.origin[2] == 1);
    CHECK(u.origin[3] == 1);

    auto words = oracle::enumerate_language(u.nfa, 5);
    std::set<std::string> expect;
    for (int n = 1; n <= 5; ++n) expect.insert(std::string(n, char(1)));
    for (int n = 1; n <= 4; ++n) expect.insert(std::string(n, char(1)) + char(2));
    CHECK(words == expect);

    // no compatible Wheeler order exists for this union
    CHECK(!oracle::exhaustive_corder(u).has_value());
}

TEST_CASE("union of an automaton with itself keeps the language") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 25; ++t) {
        Nfa a = testgen::random_wheeler_automaton(rng, 3, 5);
        UnionNfa u = union_automaton(a, a);
        CHECK(oracle::enumerate_language(u.nfa, 6) == oracle::enumerate_language(a, 6));
    }
}

TEST_CASE("self-union of a deterministic chain stays orderable") {
    // for single-out-edge-per-label automata the twin interleaving works;
    // nondeterministic self-loops can make even the self-union unorderable
    Nfa chain = fixtures::parse(
        "nodes 3 source 1\n"
        "edge 1 2 a\n"
        "edge 2 3 b\n"
        "finals 3\n");
    CHECK(oracle::exhaustive_corder(union_automaton(chain, chain)).has_value());

    Nfa loopy = fixtures::parse(
        "nodes 3 source 1\n"
        "edge 1 2 a\n"
        "edge 2 2 a\n"
        "edge 2 3 a\n"
        "finals 3\n");
    REQUIRE(!validate_wheeler(loopy, identity_order(3)));
    CHECK(!oracle::exhaustive_corder(union_automaton(loopy, loopy)).has_value());
}

TEST_CASE("union language is the set union") {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 40; ++t) {
        Nfa a0 = testgen::random_wheeler_automaton(rng, 3, 5);
        Nfa a1 = testgen::random_wheeler_automaton(rng, 3, 5);
        UnionNfa u = union_automaton(a0, a1);
        auto w0 = oracle::enumerate_language(a0, 8);
        auto w1 = oracle::enumerate_language(a1, 8);
        std::set<std::string> both(w0);
        both.insert(w1.begin(), w1.end());
        CHECK(oracle::enumerate_language(u.nfa, 8) == both);
    }
}

TEST_CASE("text format round trip") {
    Nfa a = fixtures::plain_side();
    std::ostringstream out;
    write_nfa_text(out, a);
    std::istringstream in(out.str());
    Nfa b = parse_nfa_text(in);
    CHECK(a.n == b.n);
    CHECK(a.source == b.source);
    CHECK(a.finals == b.finals);
    REQUIRE(a.edges.size() == b.edges.size());
    for (size_t i = 0; i < a.edges.size(); ++i) {
        CHECK(a.edges[i].from == b.edges[i].from);
        CHECK(a.edges[i].to == b.edges[i].to);
        CHECK(a.edges[i].label == b.edges[i].label);
    }
}

TEST_CASE("the chain/fan union accepts the documented order") {
    UnionNfa u = union_automaton(fixtures::chain_ab_automaton(), fixtures::fan_ab_automaton());
    // s < v < v* < w < w*
    std::vector<int64_t> order = {u.nfa.source, u.node_of(1, 2), u.node_of(0, 2),
                                  u.node_of(1, 3), u.node_of(0, 3)};
    CHECK(!validate_wheeler(u.nfa, order));
}

TEST_CASE("per-order validation splits random graphs both ways") {
    // sanity: over all permutations some small NFAs admit an order and some
    // do not, and the validator is the judge in both directions
    std::mt19937_64 rng(41);
    int with_order = 0;
    const int trials = 60;
    for (int t = 0; t < trials; ++t) {
        int64_t n = 2 + rng() % 3;
        Nfa a;
        a.n = n;
        a.source = 0;
        a.sigma = 2;
        a.alpha = "ab";
        a.finals.assign(n, true);
        for (int64_t v = 1; v < n; ++v) {
            uint8_t lab = 1 + rng() % 2;
            int64_t indeg = 1 + rng() % 2;
            for (int64_t e = 0; e < indeg; ++e)
                a.edges.push_back({static_cast<int64_t>(rng() % n), v, lab});
        }
        std::vector<int64_t> perm(n);
        for (int64_t i = 0; i < n; ++i) perm[i] = i;
        bool found = false;
        do {
            if (!validate_wheeler(a, perm)) found = true;
        } while (!found && std::next_permutation(perm.begin(), perm.end()));
        with_order += found;
    }
    CHECK(with_order > 0);
    CHECK(with_order < trials);
}

TEST_CASE("wg serialization round trip") {
    BossGraph boss = build_boss(fixtures::running_collection(), 3, 4);
    WheelerGraph g = boss_to_wheeler(boss);
    std::stringstream buf;
    g.serialize(buf);
    WheelerGraph h = WheelerGraph::deserialize(buf);
    CHECK(g.I == h.I);
    CHECK(g.O == h.O);
    CHECK(g.L == h.L);
    CHECK(g.Cp == h.Cp);
    CHECK(g.finals == h.finals);
}
