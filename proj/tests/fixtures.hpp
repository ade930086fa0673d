#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "wgm/wheeler.hpp"

// Shared hand-built instances used across the unit and acceptance suites.
namespace fixtures {

// DNA alphabet with A=1, C=2, G=3, T=4.
inline std::string dna(const std::string& letters) {
    std::string out;
    for (char ch : letters) {
        switch (ch) {
            case 'A': out.push_back(1); break;
            case 'C': out.push_back(2); break;
            case 'G': out.push_back(3); break;
            case 'T': out.push_back(4); break;
            default: out.push_back(0); break;
        }
    }
    return out;
}

inline std::string dna_letters(const std::string& syms) {
    static const char* map = "$ACGT";
    std::string out;
    for (char s : syms) out.push_back(map[static_cast<uint8_t>(s)]);
    return out;
}

// The three-string collection whose de Bruijn graph is the running example
// (order 3).
inline std::vector<std::string> running_collection() {
    return {dna("TACACT"), dna("TACTCG"), dna("GACTCA")};
}

inline wgm::Nfa parse(const std::string& text) {
    std::istringstream in(text);
    return wgm::parse_nfa_text(in);
}

// Eight-node Wheeler graph matching the navigation walkthrough: node 1 has
// no incoming edges, nodes 2-4 take label a, 5-6 take b, 7-8 take c, and
// backward_min(5) resolves to the edge (1,5,b) through the intermediate
// values kpos=10, c=2, j=1, h=3.
inline wgm::Nfa walkthrough_graph() {
    return parse(
        "nodes 8 source 1\n"
        "edge 1 2 a\n"
        "edge 1 3 a\n"
        "edge 2 3 a\n"
        "edge 4 4 a\n"
        "edge 5 4 a\n"
        "edge 1 5 b\n"
        "edge 3 6 b\n"
        "edge 5 6 b\n"
        "edge 6 7 c\n"
        "edge 7 8 c\n"
        "edge 8 8 c\n"
        "finals 8\n");
}

// Two unary-ish automata whose union has no Wheeler C-order: the languages
// are a^n (left) and a^n b (right).
inline wgm::Nfa an_automaton() {   // accepts a^n, n >= 1
    return parse(
        "nodes 2 source 1\n"
        "edge 1 2 a\n"
        "edge 2 2 a\n"
        "finals 2\n");
}

inline wgm::Nfa anb_automaton() {   // accepts a^n b, n >= 1
    return parse(
        "nodes 3 source 1\n"
        "edge 1 2 a\n"
        "edge 2 2 a\n"
        "edge 2 3 b\n"
        "finals 3\n");
}

// Pair whose union admits the order s < v < v* < w < w* yet refinement
// collapses v with v*: the first input accepts {ab}, the second {a, b}.
inline wgm::Nfa chain_ab_automaton() {   // v* -> w* chain
    return parse(
        "nodes 3 source 1\n"
        "edge 1 2 a\n"
        "edge 2 3 b\n"
        "finals 3\n");
}

inline wgm::Nfa fan_ab_automaton() {   // v and w both hang off the source
    return parse(
        "nodes 3 source 1\n"
        "edge 1 2 a\n"
        "edge 1 3 b\n"
        "finals 2 3\n");
}

// The refinement running example. Side 0 is the starred automaton
// {s, x*, z*, w*, y*}; side 1 is {s, x, z, v, w, y}; labels are a/b/c. The
// initial incoming-label partition is {s} {x*,z*,x,z} {w*,v,w} {y*,y}, one
// refinement step yields {s} {x*,x} {z} {z*} {v} {w*} {w} {y*,y}, and a
// second pass changes nothing.
inline wgm::Nfa starred_side() {   // order s0 < x* < z* < w* < y*
    return parse(
        "nodes 5 source 1\n"
        "edge 1 2 a\n"      // s0 -> x*
        "edge 2 4 b\n"      // x* -> w*
        "edge 2 5 c\n"      // x* -> y*
        "edge 5 3 a\n"      // y* -> z*
        "finals 3 4\n");
}

inline wgm::Nfa plain_side() {   // order s1 < x < z < v < w < y
    return parse(
        "nodes 6 source 1\n"
        "edge 1 2 a\n"      // s1 -> x
        "edge 1 4 b\n"      // s1 -> v
        "edge 2 5 b\n"      // x -> w
        "edge 2 6 c\n"      // x -> y
        "edge 4 5 b\n"      // v -> w
        "edge 5 3 a\n"      // w -> z
        "edge 6 3 a\n"      // y -> z
        "finals 3\n");
}

}  // namespace fixtures
