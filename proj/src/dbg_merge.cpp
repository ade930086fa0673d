#include "wgm/dbg_merge.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

namespace wgm {

namespace {

// B2 entry semantics during iteration h: 0 means B=0, 3 means 0<B<h-1, and
// the remaining two states alternate with the parity of h (even: 2 means h
// and 1 means h-1; odd: swapped). Marking sets one bit, which both writes h
// into an empty entry and reinterprets a stale h-1 entry as 3 for the next
// iteration.
inline bool b2_is_zh_boundary(uint64_t v, uint32_t h) {
    return v == 3 || v == (h % 2 == 0 ? 1u : 2u);
}

inline uint64_t b2_marked(uint64_t v, uint32_t h) {
    return v | (h % 2 == 0 ? 2u : 1u);
}

}  // namespace

MergeState init_phase1(const BossGraph& g0, const BossGraph& g1, PlanMode mode) {
    if (g0.k != g1.k) throw std::invalid_argument("order mismatch");
    if (g0.sigma != g1.sigma) throw std::invalid_argument("alphabet mismatch");

    MergeState st;
    st.mode = mode;
    st.k = g0.k;
    st.sigma = g0.sigma;
    st.n0 = g0.n;
    st.n1 = g1.n;
    st.n = g0.n + g1.n;
    st.h = 1;

    // per-symbol node counts: one scan of each W restricted to flagged entries
    std::vector<uint64_t> l0(st.sigma, 0), l1(st.sigma, 0);
    for (uint64_t i = 1; i <= g0.m(); ++i)
        if (g0.wminus.bit(i)) ++l0[g0.W.sym(i) - 1];
    for (uint64_t i = 1; i <= g1.m(); ++i)
        if (g1.wminus.bit(i)) ++l1[g1.W.sym(i) - 1];

    st.start.assign(st.sigma, 0);
    uint64_t acc = 3;
    for (uint32_t c = 0; c < st.sigma; ++c) {
        st.start[c] = acc;
        acc += l0[c] + l1[c];
    }
    st.f.assign(st.sigma, 0);
    st.block_id.assign(st.sigma, 0);

    st.zprev = PackedInts(st.n, 1);
    st.zcur = PackedInts(st.n, 1);
    if (mode == PlanMode::Plain) st.b2 = PackedInts(st.n, 2);
    else st.bfull = PackedInts(st.n, bits_for(st.k));

    // Z(1) = 01 followed by one zeros-then-ones group per symbol
    uint64_t p = 0;
    st.zprev.set(p++, 0);
    st.zprev.set(p++, 1);
    for (uint32_t c = 0; c < st.sigma; ++c) {
        for (uint64_t t = 0; t < l0[c]; ++t) st.zprev.set(p++, 0);
        for (uint64_t t = 0; t < l1[c]; ++t) st.zprev.set(p++, 1);
    }

    // initial block boundaries: position 1 and every subarray start
    auto mark_init = [&](uint64_t pos) {
        if (pos > st.n) return;
        if (mode == PlanMode::Plain) st.b2.set(pos - 1, 1);
        else st.bfull.set(pos - 1, 1);
    };
    mark_init(1);
    for (uint32_t c = 0; c < st.sigma; ++c) mark_init(st.start[c]);

    st.stats.scratch_bits = st.zprev.bits() + st.zcur.bits() +
                            (mode == PlanMode::Plain ? st.b2.bits() : 0);
    st.stats.scratch_words = 3 * st.sigma;
    st.stats.ops = g0.m() + g1.m();
    return st;
}

void merge_iteration(MergeState& st, const BossGraph& g0, const BossGraph& g1) {
    if (st.h >= st.k) throw std::logic_error("merge_iteration: already at h = k");
    uint32_t h = ++st.h;

    for (uint32_t c = 0; c < st.sigma; ++c) {
        st.f[c] = st.start[c];
        st.block_id[c] = 0;
    }
    const BossGraph* gs[2] = {&g0, &g1};
    uint64_t cursor[2] = {1, 1};
    st.zcur.set(0, 0);
    st.zcur.set(1, 1);

    uint64_t id = 0;
    for (uint64_t p = 1; p <= st.n; ++p) {
        ++st.stats.ops;
        // B[1] stays 1 throughout, so position 1 opens a block in every
        // iteration; its B2 entry is never re-marked and would go stale
        bool boundary = p == 1 ||
                        (st.mode == PlanMode::Plain
                             ? b2_is_zh_boundary(st.b2.get(p - 1), h)
                             : (st.bfull.get(p - 1) != 0 && st.bfull.get(p - 1) != h));
        if (boundary) id = p;   // a block of Z(h-1) starts here

        int b = static_cast<int>(st.zprev.get(p - 1));
        const BossGraph& g = *gs[b];
        uint64_t& i = cursor[b];
        bool done;
        do {
            ++st.stats.ops;
            if (g.wminus.bit(i)) {
                uint8_t c = g.W.sym(i);
                uint64_t q = st.f[c - 1]++;
                st.zcur.set(q - 1, static_cast<uint64_t>(b));
                if (st.block_id[c - 1] != id) {
                    st.block_id[c - 1] = id;
                    if (st.mode == PlanMode::Plain)
                        st.b2.set(q - 1, b2_marked(st.b2.get(q - 1), h));
                    else if (st.bfull.get(q - 1) == 0)
                        st.bfull.set(q - 1, h);
                }
            }
            done = g.last.bit(i);
            ++i;
        } while (!done);
    }
    std::swap(st.zprev, st.zcur);
}

MergeState run_merge_plan(const BossGraph& g0, const BossGraph& g1, PlanMode mode) {
    MergeState st = init_phase1(g0, g1, mode);
    for (uint32_t h = 2; h <= st.k; ++h) merge_iteration(st, g0, g1);
    return st;
}

BlockClass block_class(const MergeState& st, uint64_t q) {
    if (st.mode == PlanMode::Plain) {
        if (q == 1) return st.k == 1 ? BlockClass::Max : BlockClass::Mid;   // B[1] = 1
        uint64_t v = st.b2.get(q - 1);
        if (v == 0) return BlockClass::Zero;
        // at h = k the parity-dependent state encodes B = k
        if (v == (st.k % 2 == 0 ? 2u : 1u)) return BlockClass::Max;
        return BlockClass::Mid;
    }
    uint64_t v = st.bfull.get(q - 1);
    if (v == 0) return BlockClass::Zero;
    return v == st.k ? BlockClass::Max : BlockClass::Mid;
}

uint64_t block_value(const MergeState& st, uint64_t q) {
    if (st.mode != PlanMode::VariableOrder)
        throw std::logic_error("block_value: full B only kept in variable-order mode");
    return st.bfull.get(q - 1);
}

// ---------------------------------------------------------------------------
// Phase 3

void stream_union(const BossGraph& g0, const BossGraph& g1, const MergeState& plan,
                  UnionSink& sink) {
    const BossGraph* gs[2] = {&g0, &g1};
    uint64_t cursor[2] = {1, 1};

    // labels and W positions of the next node of side b
    auto read_segment = [&](int b, std::vector<std::pair<uint8_t, uint64_t>>& out) {
        const BossGraph& g = *gs[b];
        uint64_t& i = cursor[b];
        out.clear();
        bool done;
        do {
            out.emplace_back(g.W.sym(i), i);
            done = g.last.bit(i);
            ++i;
        } while (!done);
    };

    // a fresh epoch starts at every block boundary with 0 < B < k; a label is
    // flagged in wminus only on its first occurrence within an epoch
    uint64_t epoch = 0;
    std::vector<uint64_t> last_epoch(plan.sigma + 1, UINT64_MAX);

    std::vector<std::pair<uint8_t, uint64_t>> seg[2];
    uint64_t q = 1;
    bool first_node = true;
    while (q <= plan.n) {
        BlockClass cls = block_class(plan, q);
        if (cls == BlockClass::Mid) ++epoch;

        int b = plan.z_bit(q) ? 1 : 0;
        read_segment(b, seg[0]);
        seg[1].clear();
        bool merged_pair = q < plan.n && block_class(plan, q + 1) == BlockClass::Zero;
        int b2side = -1;
        if (merged_pair) {
            b2side = plan.z_bit(q + 1) ? 1 : 0;
            read_segment(b2side, seg[1]);
            q += 2;
        } else {
            q += 1;
        }

        std::optional<uint32_t> lcs;
        if (!first_node && plan.mode == PlanMode::VariableOrder)
            lcs = static_cast<uint32_t>(block_value(plan, merged_pair ? q - 2 : q - 1) - 1);
        sink.begin_node(lcs);
        first_node = false;

        // union of the two label sets, $ markers dropped
        std::set<uint8_t> labels;
        for (auto& [c, pos] : seg[0])
            if (c != 0) labels.insert(c);
        for (auto& [c, pos] : seg[1])
            if (c != 0) labels.insert(c);

        auto find_pos = [](const std::vector<std::pair<uint8_t, uint64_t>>& s,
                           uint8_t c) -> std::optional<uint64_t> {
            for (auto& [lab, pos] : s)
                if (lab == c) return pos;
            return std::nullopt;
        };

        if (labels.empty()) {
            sink.entry(0, false, true, std::nullopt, std::nullopt);
            continue;
        }
        size_t left = labels.size();
        for (uint8_t c : labels) {
            bool flag = last_epoch[c] != epoch;
            last_epoch[c] = epoch;
            std::optional<uint64_t> p0 = find_pos(seg[0], c);
            std::optional<uint64_t> p1 = find_pos(seg[1], c);
            if (b == 1) std::swap(p0, p1);   // seg[0] came from side b
            sink.entry(c, flag, --left == 0, p0, p1);
        }
    }
}

namespace {

class GraphSink : public UnionSink {
public:
    explicit GraphSink(uint32_t sigma) : sigma_(sigma) {}
    void entry(uint8_t label, bool wminus, bool is_last, std::optional<uint64_t>,
               std::optional<uint64_t>) override {
        w_.push_back(label);
        wm_.push_back(wminus);
        last_.push_back(is_last);
    }
    BossGraph take(uint32_t k) {
        BossGraph g;
        g.k = k;
        g.sigma = sigma_;
        g.W = SymSeq(w_, sigma_);
        g.wminus = BitVec(wm_);
        g.last = BitVec(last_);
        g.n = g.last.ones();
        g.finish();
        return g;
    }

private:
    uint32_t sigma_;
    std::vector<uint8_t> w_;
    std::vector<bool> wm_, last_;
};

}  // namespace

BossGraph build_union(const BossGraph& g0, const BossGraph& g1, const MergeState& plan) {
    GraphSink sink(plan.sigma);
    stream_union(g0, g1, plan, sink);
    return sink.take(plan.k);
}

BossGraph merge_boss(const BossGraph& g0, const BossGraph& g1, MergeStats& stats_out) {
    MergeState plan = run_merge_plan(g0, g1, PlanMode::Plain);
    BossGraph g = build_union(g0, g1, plan);
    stats_out = plan.stats;
    return g;
}

BossGraph merge_boss(const BossGraph& g0, const BossGraph& g1) {
    MergeStats ignored;
    return merge_boss(g0, g1, ignored);
}

// ---------------------------------------------------------------------------
// color matrices

ColorMatrix::ColorMatrix(uint64_t r, uint32_t c) : rows(r), cols(c) {
    words.assign(rows * stride(), 0);
}

bool ColorMatrix::get(uint64_t row, uint32_t col) const {
    return (words[row * stride() + col / 64] >> (col % 64)) & 1;
}

void ColorMatrix::set(uint64_t row, uint32_t col) {
    words[row * stride() + col / 64] |= 1ull << (col % 64);
}

void ColorMatrix::or_row_from(const ColorMatrix& src, uint64_t src_row, uint64_t dst_row,
                              uint32_t col_shift) {
    for (uint32_t c = 0; c < src.cols; ++c)
        if (src.get(src_row, c)) set(dst_row, c + col_shift);
}

void ColorMatrix::serialize(std::ostream& out) const {
    out.write("CMAT", 4);
    write_u64(out, rows);
    write_u32(out, cols);
    size_t row_bytes = (cols + 7) / 8;
    for (uint64_t r = 0; r < rows; ++r) {
        for (size_t byte = 0; byte < row_bytes; ++byte) {
            uint8_t v = 0;
            for (size_t bit = 0; bit < 8; ++bit) {
                uint32_t col = static_cast<uint32_t>(byte * 8 + bit);
                if (col < cols && get(r, col)) v |= 1u << bit;
            }
            write_u8(out, v);
        }
    }
}

ColorMatrix ColorMatrix::deserialize(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::string(magic, 4) != "CMAT")
        throw std::runtime_error("bad CMAT magic");
    uint64_t rows = read_u64(in);
    uint32_t cols = read_u32(in);
    ColorMatrix m(rows, cols);
    size_t row_bytes = (cols + 7) / 8;
    for (uint64_t r = 0; r < rows; ++r) {
        for (size_t byte = 0; byte < row_bytes; ++byte) {
            uint8_t v = read_u8(in);
            for (size_t bit = 0; bit < 8; ++bit) {
                uint32_t col = static_cast<uint32_t>(byte * 8 + bit);
                if (col < cols && ((v >> bit) & 1)) m.set(r, col);
            }
        }
    }
    return m;
}

namespace {

class ColorSink : public UnionSink {
public:
    ColorSink(uint32_t sigma, const ColorMatrix& m0, const ColorMatrix& m1)
        : graph_(sigma), m0_(m0), m1_(m1) {
        row_data_.reserve(m0.rows + m1.rows);
    }
    void entry(uint8_t label, bool wminus, bool is_last, std::optional<uint64_t> src0,
               std::optional<uint64_t> src1) override {
        graph_.entry(label, wminus, is_last, src0, src1);
        row_data_.push_back({src0, src1});
    }
    std::pair<BossGraph, ColorMatrix> take(uint32_t k) {
        BossGraph g = graph_.take(k);
        ColorMatrix m(row_data_.size(), m0_.cols + m1_.cols);
        for (uint64_t r = 0; r < row_data_.size(); ++r) {
            if (row_data_[r].first) m.or_row_from(m0_, *row_data_[r].first - 1, r, 0);
            if (row_data_[r].second) m.or_row_from(m1_, *row_data_[r].second - 1, r, m0_.cols);
        }
        return {std::move(g), std::move(m)};
    }

private:
    GraphSink graph_;
    const ColorMatrix& m0_;
    const ColorMatrix& m1_;
    std::vector<std::pair<std::optional<uint64_t>, std::optional<uint64_t>>> row_data_;
};

class VoSink : public UnionSink {
public:
    explicit VoSink(uint32_t sigma) : graph_(sigma) {}
    void begin_node(std::optional<uint32_t> lcs) override {
        if (lcs) lcs_.push_back(static_cast<uint16_t>(*lcs));
    }
    void entry(uint8_t label, bool wminus, bool is_last, std::optional<uint64_t> src0,
               std::optional<uint64_t> src1) override {
        graph_.entry(label, wminus, is_last, src0, src1);
    }
    std::pair<BossGraph, std::vector<uint16_t>> take(uint32_t k) {
        return {graph_.take(k), std::move(lcs_)};
    }

private:
    GraphSink graph_;
    std::vector<uint16_t> lcs_;
};

}  // namespace

std::pair<BossGraph, ColorMatrix> merge_colored(const BossGraph& g0, const BossGraph& g1,
                                                const ColorMatrix& m0, const ColorMatrix& m1,
                                                MergeStats& stats_out) {
    if (m0.rows != g0.m() || m1.rows != g1.m())
        throw std::invalid_argument("merge_colored: matrix row count does not match |W|");
    MergeState plan = run_merge_plan(g0, g1, PlanMode::Plain);
    ColorSink sink(plan.sigma, m0, m1);
    stream_union(g0, g1, plan, sink);
    stats_out = plan.stats;
    return sink.take(plan.k);
}

std::pair<BossGraph, ColorMatrix> merge_colored(const BossGraph& g0, const BossGraph& g1,
                                                const ColorMatrix& m0, const ColorMatrix& m1) {
    MergeStats ignored;
    return merge_colored(g0, g1, m0, m1, ignored);
}

std::pair<BossGraph, std::vector<uint16_t>> merge_vo(const BossGraph& g0, const BossGraph& g1,
                                                     MergeStats& stats_out) {
    MergeState plan = run_merge_plan(g0, g1, PlanMode::VariableOrder);
    VoSink sink(plan.sigma);
    stream_union(g0, g1, plan, sink);
    stats_out = plan.stats;
    return sink.take(plan.k);
}

std::pair<BossGraph, std::vector<uint16_t>> merge_vo(const BossGraph& g0, const BossGraph& g1) {
    MergeStats ignored;
    return merge_vo(g0, g1, ignored);
}

}  // namespace wgm
