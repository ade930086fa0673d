#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wgm/bitseq.hpp"

namespace wgm {

// Succinct order-k de Bruijn graph: the sequence W of outgoing edge labels
// grouped by source node (one $ entry for out-degree-0 nodes), the flag
// vector wminus marking the first incoming edge of every destination node,
// and last marking the final W position of each node.
//
// Nodes are ranked 1..n by the colexicographic order of their k-mers; node 1
// is always $^k. Strings are stored as raw symbol values: 0 for $, 1..sigma
// for the alphabet.
struct BossGraph {
    uint32_t k = 0;
    uint32_t sigma = 0;
    uint64_t n = 0;    // node count
    SymSeq W;          // length m
    BitVec wminus;
    BitVec last;
    SymSeq wflag;      // W with unflagged entries zeroed; rank support for LF

    uint64_t m() const { return W.size(); }
    void finish();     // rebuilds wflag from W and wminus

    // count of flagged edges with label < c, i.e. destinations before the
    // first c-destination (the F array of the original proposal, derived
    // rather than stored)
    uint64_t flagged_before(uint8_t c) const;

    bool operator==(const BossGraph& o) const {
        return k == o.k && sigma == o.sigma && n == o.n && W == o.W &&
               wminus == o.wminus && last == o.last;
    }

    void serialize(std::ostream& out) const;
    static BossGraph deserialize(std::istream& in);
};

// Builds the BOSS representation of the order-k de Bruijn graph of the given
// collection. Strings hold symbol values in 1..sigma; each is implicitly
// prefixed by k sentinels. Throws on an empty collection, an empty string, or
// a symbol outside the alphabet.
BossGraph build_boss(const std::vector<std::string>& collection, uint32_t k, uint32_t sigma);

// k-mer of node v (symbol values, $ = 0), reconstructed by backward walks.
std::string node_kmer(const BossGraph& g, uint64_t v);

// LF map: destination node of the edge at W position i; requires wminus[i]=1.
uint64_t forward(const BossGraph& g, uint64_t i);

// Node rank containing W position i.
uint64_t node_of_position(const BossGraph& g, uint64_t i);

// W positions [begin, end] of node v's segment.
std::pair<uint64_t, uint64_t> node_range(const BossGraph& g, uint64_t v);

struct BossViolation {
    uint64_t position = 0;     // first failing W position or node, 0 if global
    std::string message;
};

// Checks every structural invariant; nullopt means the graph is well formed.
std::optional<BossViolation> validate_boss(const BossGraph& g);

}  // namespace wgm
