#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "wgm/bitseq.hpp"
#include "wgm/boss.hpp"

namespace wgm {

enum class PlanMode { Plain, VariableOrder };

// 0 <-> B[q] = 0 (equal k-mers), Mid <-> 0 < B[q] < k, Max <-> B[q] = k
enum class BlockClass : uint8_t { Zero, Mid, Max };

struct MergeStats {
    uint64_t scratch_bits = 0;    // Z(h-1) + Z(h) (+ B2 in plain mode)
    uint64_t scratch_words = 0;   // F / start / Block_id counters
    uint64_t ops = 0;             // loop steps summed over all iterations
};

// State of the k-mer merging loop. Z(h-1) and Z(h) live in zprev/zcur; block
// boundaries live in the 2-bit array b2 (plain mode) or in full-width bfull
// (variable-order mode, part of the output). h is the last completed
// iteration; after init_phase1 it is 1.
struct MergeState {
    PlanMode mode = PlanMode::Plain;
    uint32_t k = 0, sigma = 0, h = 0;
    uint64_t n = 0, n0 = 0, n1 = 0;
    PackedInts zprev, zcur;
    PackedInts b2;
    PackedInts bfull;
    std::vector<uint64_t> f, start, block_id;   // index c-1 for symbol c
    MergeStats stats;

    bool z_bit(uint64_t p) const { return zprev.get(p - 1) != 0; }   // Z(h)[p]
};

// Phase 1: counts per-symbol node totals, lays out Z(1) and the initial
// block boundaries. Throws "order mismatch" when the orders differ and
// "alphabet mismatch" when the alphabet sizes do.
MergeState init_phase1(const BossGraph& g0, const BossGraph& g1, PlanMode mode);

// One pass of the main merging procedure; advances h by one (2 <= h <= k).
void merge_iteration(MergeState& st, const BossGraph& g0, const BossGraph& g1);

// Runs init plus the k-1 iterations.
MergeState run_merge_plan(const BossGraph& g0, const BossGraph& g1, PlanMode mode);

// Classification of B[q] after the final iteration.
BlockClass block_class(const MergeState& st, uint64_t q);
// Full B[q] value; variable-order mode only.
uint64_t block_value(const MergeState& st, uint64_t q);

// Streaming consumer for Phase 3. begin_node fires once per output node and
// carries B[q]-1 of the opening position in variable-order mode; entry fires
// for every output W position with the contributing input positions.
class UnionSink {
public:
    virtual ~UnionSink() = default;
    virtual void begin_node(std::optional<uint32_t> lcs_with_prev) { (void)lcs_with_prev; }
    virtual void entry(uint8_t label, bool wminus, bool is_last,
                       std::optional<uint64_t> src0, std::optional<uint64_t> src1) = 0;
};

// Phase 3: single sequential pass over Z(k)/B emitting the union graph.
void stream_union(const BossGraph& g0, const BossGraph& g1, const MergeState& plan,
                  UnionSink& sink);

// Phase 3 collected into a BossGraph.
BossGraph build_union(const BossGraph& g0, const BossGraph& g1, const MergeState& plan);

// Plain merge: plan + union.
BossGraph merge_boss(const BossGraph& g0, const BossGraph& g1);
BossGraph merge_boss(const BossGraph& g0, const BossGraph& g1, MergeStats& stats_out);

// Binary color-membership matrix; rows follow W positions.
struct ColorMatrix {
    uint64_t rows = 0;
    uint32_t cols = 0;
    std::vector<uint64_t> words;   // row-major, stride words per row

    ColorMatrix() = default;
    ColorMatrix(uint64_t rows, uint32_t cols);
    size_t stride() const { return (cols + 63) / 64; }
    bool get(uint64_t row, uint32_t col) const;
    void set(uint64_t row, uint32_t col);
    void or_row_from(const ColorMatrix& src, uint64_t src_row, uint64_t dst_row,
                     uint32_t col_shift);
    bool operator==(const ColorMatrix& o) const {
        return rows == o.rows && cols == o.cols && words == o.words;
    }

    void serialize(std::ostream& out) const;
    static ColorMatrix deserialize(std::istream& in);
};

// Colored merge: output columns are G0's colors followed by G1's shifted by
// c0. Throws when a matrix row count differs from its graph's |W|.
std::pair<BossGraph, ColorMatrix> merge_colored(const BossGraph& g0, const BossGraph& g1,
                                                const ColorMatrix& m0, const ColorMatrix& m1);
std::pair<BossGraph, ColorMatrix> merge_colored(const BossGraph& g0, const BossGraph& g1,
                                                const ColorMatrix& m0, const ColorMatrix& m1,
                                                MergeStats& stats_out);

// Variable-order merge: union graph plus the LCS array between consecutive
// output nodes (n_out - 1 entries).
std::pair<BossGraph, std::vector<uint16_t>> merge_vo(const BossGraph& g0, const BossGraph& g1);
std::pair<BossGraph, std::vector<uint16_t>> merge_vo(const BossGraph& g0, const BossGraph& g1,
                                                     MergeStats& stats_out);

}  // namespace wgm
