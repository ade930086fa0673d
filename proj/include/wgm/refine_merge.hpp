#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wgm/bitseq.hpp"
#include "wgm/wheeler.hpp"

namespace wgm {

// Ordered W-consistent partition of the union automaton's nodes, encoded as
// two bitvectors of length n0+n1. B carries a 1 at the last position of every
// set; Z lists each set's members as the side-0 nodes (zeros) followed by the
// side-1 nodes (ones), both in their original Wheeler order. The first set is
// always the source pair {s0, s1}, encoded as "01".
struct Partition {
    BitVec b;
    BitVec z;

    uint64_t num_sets() const { return b.ones(); }
    uint64_t size() const { return b.size(); }
    // set id of the side-b node with original rank r; set ids are 0-based
    uint64_t set_of(int side, int64_t rank) const;

    bool operator==(const Partition& o) const { return b == o.b && z == o.z; }
};

struct MinmaxPair {
    uint64_t lo = 0;   // smallest predecessor set
    uint64_t hi = 0;   // largest predecessor set

    bool operator==(const MinmaxPair& o) const { return lo == o.lo && hi == o.hi; }
    bool compatible(const MinmaxPair& o) const { return hi <= o.lo || o.hi <= lo; }
    bool preceq(const MinmaxPair& o) const { return hi <= o.lo; }
};

// Precomputed per-node predecessor extremes of the union automaton, the
// input-side navigation the refinement loop reads.
class RefineContext {
public:
    explicit RefineContext(const UnionNfa& u);
    const UnionNfa& u() const { return *u_; }
    // smallest/largest predecessor rank of the side-b node with rank r >= 2
    int64_t pred_min(int side, int64_t rank) const;
    int64_t pred_max(int side, int64_t rank) const;

private:
    const UnionNfa* u_;
    std::vector<std::pair<int64_t, int64_t>> preds_[2];   // indexed by rank
};

// The partition of the incoming-label classes: {s}, then one set per used
// symbol. Throws when some node has mixed incoming labels.
Partition initial_partition(const UnionNfa& u);

// Minmax pair of a union node under the current partition; the node must not
// be the source.
MinmaxPair minmax(const RefineContext& ctx, const Partition& part, int64_t node);

// One refinement pass; nullopt signals that two incompatible minmax pairs
// met, so no Wheeler C-order exists.
std::optional<Partition> refine_step(const RefineContext& ctx, const Partition& part);

enum class RefineStatus { NoOrder, Exact, Reduced };

struct FixpointResult {
    RefineStatus status = RefineStatus::NoOrder;
    Partition partition;        // meaningful unless NoOrder
    uint32_t iterations = 0;    // refine_step calls, fixpoint detection included
    uint64_t scratch_bits = 0;  // raw bits of the B/Z double buffers
};

// Iterates refine_step until the partition stops changing or no order can
// exist. Exact means every non-source set is a singleton.
FixpointResult refine_to_fixpoint(const UnionNfa& u);

// Quotient automaton of Definition-11 shape: one node per set, in partition
// order (which is a Wheeler order of the result).
struct ReducedAutomaton {
    Nfa nfa;                          // node ids = set ids
    std::vector<int64_t> set_of_node; // union node id -> set id
};
ReducedAutomaton build_reduced(const UnionNfa& u, const Partition& part);

}  // namespace wgm
