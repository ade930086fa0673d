#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wgm/bitseq.hpp"

namespace wgm {

struct BossGraph;

// Plain adjacency NFA. Node ids are 0-based; labels are symbol values in
// 1..sigma. alpha maps symbol values to display characters (alpha[c-1]).
struct Nfa {
    struct Edge {
        int64_t from = 0;
        int64_t to = 0;
        uint8_t label = 0;
    };
    int64_t n = 0;
    int64_t source = 0;
    uint32_t sigma = 0;
    std::vector<Edge> edges;
    std::vector<bool> finals;
    std::string alpha;

    char label_char(uint8_t c) const {
        return c >= 1 && c <= alpha.size() ? alpha[c - 1] : '?';
    }
};

// Succinct Wheeler graph: unary in/out-degree vectors I and O, the label
// sequence L grouped by source node (sorted within each node), the symbol
// boundary vector C', and a finals bitvector. Node 1 is the source.
struct WheelerGraph {
    uint64_t n = 0;
    uint64_t m = 0;
    uint32_t sigma = 0;
    BitVec I;
    BitVec O;
    SymSeq L;
    BitVec Cp;
    BitVec finals;
    std::string alpha;

    uint64_t in_degree(uint64_t v) const;
    uint64_t out_degree(uint64_t v) const;

    void serialize(std::ostream& out) const;
    static WheelerGraph deserialize(std::istream& in);
};

struct WheelerViolation {
    std::string message;
    // the offending edge pair when the failure is a monotonicity violation
    std::optional<std::pair<Nfa::Edge, Nfa::Edge>> edges;
};

// Checks the Wheeler conditions for the given order. order[r] is the node id
// of rank r+1; it must be a permutation of 0..n-1. nullopt means the order is
// a Wheeler order.
std::optional<WheelerViolation> validate_wheeler(const Nfa& a, const std::vector<int64_t>& order);

// Succinct encoding of an NFA under a valid Wheeler order; throws
// std::invalid_argument carrying the violation message otherwise. Parallel
// edges with identical (from, to, label) collapse.
WheelerGraph encode_wheeler(const Nfa& a, const std::vector<int64_t>& order);

// Inverse of encode: node ids equal rank-1.
Nfa decode_wheeler(const WheelerGraph& g);

// One backward navigation step with the intermediate quantities of the
// rank/select chain, for nodes with positive in-degree.
struct BackwardStep {
    uint64_t u = 0;      // smallest predecessor
    uint8_t c = 0;       // label of that edge
    uint64_t kpos = 0;   // 1 + select1(I, v-1)
    uint64_t j = 0;      // index of the edge among same-labeled ones
    uint64_t h = 0;      // position in L
};
BackwardStep backward_min(const WheelerGraph& g, uint64_t v);

// Smallest / largest predecessor node of v (in-degree must be positive).
uint64_t pred_min(const WheelerGraph& g, uint64_t v);
uint64_t pred_max(const WheelerGraph& g, uint64_t v);

// Union automaton of two Wheeler automata given in rank order (node ids =
// rank-1, source = node 0). Node 0 of the result is the fused source; the
// other nodes carry their origin side and original rank.
struct UnionNfa {
    Nfa nfa;
    std::vector<int8_t> origin;      // -1 for s, else 0/1
    std::vector<int64_t> orig_rank;  // rank in the origin automaton (source = 1)
    int64_t n0 = 0;                  // node counts of the inputs, sources included
    int64_t n1 = 0;

    // node id of the side-b node with original rank r (r >= 2)
    int64_t node_of(int b, int64_t r) const;
};
UnionNfa union_automaton(const Nfa& a0, const Nfa& a1);

// Incoming label of every node (Def-style lambda); 0 for the source. Throws
// if some node has incoming edges with mixed labels.
std::vector<uint8_t> incoming_labels(const Nfa& a);

// Wheeler view of a BOSS graph: $ markers are dropped, node order kept.
WheelerGraph boss_to_wheeler(const BossGraph& g);

// Text format: "nodes N source S" / "edge u v c" / "finals f1 f2 ..." with
// 1-based node ids and single-character labels (ASCII order gives the symbol
// ranking).
Nfa parse_nfa_text(std::istream& in);
void write_nfa_text(std::ostream& out, const Nfa& a);

// Remaps both NFAs onto the union of their display alphabets.
void unify_alphabets(Nfa& a0, Nfa& a1);

std::vector<int64_t> identity_order(int64_t n);

}  // namespace wgm
