#include "wgm/refine_merge.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace wgm {

uint64_t Partition::set_of(int side, int64_t rank) const {
    uint64_t pos = side == 0 ? z.select0(rank) : z.select1(rank);
    return b.rank1(pos - 1);
}

RefineContext::RefineContext(const UnionNfa& u) : u_(&u) {
    preds_[0].assign(u.n0 + 1, {INT64_MAX, INT64_MIN});
    preds_[1].assign(u.n1 + 1, {INT64_MAX, INT64_MIN});
    for (const auto& e : u.nfa.edges) {
        int side = u.origin[e.to];
        if (side < 0) throw std::invalid_argument("RefineContext: edge into the source");
        int64_t to_rank = u.orig_rank[e.to];
        int64_t from_rank = e.from == u.nfa.source ? 1 : u.orig_rank[e.from];
        if (e.from != u.nfa.source && u.origin[e.from] != side)
            throw std::invalid_argument("RefineContext: cross-side edge in union automaton");
        auto& [mn, mx] = preds_[side][to_rank];
        mn = std::min(mn, from_rank);
        mx = std::max(mx, from_rank);
    }
}

int64_t RefineContext::pred_min(int side, int64_t rank) const {
    int64_t v = preds_[side][rank].first;
    if (v == INT64_MAX) throw std::invalid_argument("pred_min: node has no predecessor");
    return v;
}

int64_t RefineContext::pred_max(int side, int64_t rank) const {
    int64_t v = preds_[side][rank].second;
    if (v == INT64_MIN) throw std::invalid_argument("pred_max: node has no predecessor");
    return v;
}

Partition initial_partition(const UnionNfa& u) {
    std::vector<uint8_t> lambda = incoming_labels(u.nfa);
    uint64_t n = static_cast<uint64_t>(u.n0 + u.n1);

    PackedInts zb(n, 1), bb(n, 1);
    uint64_t p = 0;
    zb.set(p++, 0);   // s0
    zb.set(p++, 1);   // s1
    bb.set(1, 1);
    for (uint32_t c = 1; c <= u.nfa.sigma; ++c) {
        uint64_t before = p;
        for (int64_t v = 0; v < u.nfa.n; ++v)
            if (u.origin[v] == 0 && lambda[v] == c) zb.set(p++, 0);
        for (int64_t v = 0; v < u.nfa.n; ++v)
            if (u.origin[v] == 1 && lambda[v] == c) zb.set(p++, 1);
        if (p > before) bb.set(p - 1, 1);   // empty classes are dropped
    }
    if (p != n) throw std::logic_error("initial_partition: node without incoming label");
    Partition part;
    part.b = BitVec(std::move(bb));
    part.z = BitVec(std::move(zb));
    return part;
}

MinmaxPair minmax(const RefineContext& ctx, const Partition& part, int64_t node) {
    const UnionNfa& u = ctx.u();
    if (node == u.nfa.source) throw std::invalid_argument("minmax: source has no predecessors");
    int side = u.origin[node];
    int64_t rank = u.orig_rank[node];
    return {part.set_of(side, ctx.pred_min(side, rank)),
            part.set_of(side, ctx.pred_max(side, rank))};
}

namespace {

// minmax by side/rank, bypassing node ids
MinmaxPair minmax_sr(const RefineContext& ctx, const Partition& part, int side, int64_t rank) {
    return {part.set_of(side, ctx.pred_min(side, rank)),
            part.set_of(side, ctx.pred_max(side, rank))};
}

}  // namespace

std::optional<Partition> refine_step(const RefineContext& ctx, const Partition& part) {
    uint64_t n = part.size();
    PackedInts zb(n, 1), bb(n, 1);
    zb.set(0, 0);
    zb.set(1, 1);
    bb.set(1, 1);   // the source pair is never split

    uint64_t sets = part.num_sets();
    for (uint64_t t = 1; t < sets; ++t) {
        uint64_t lo = part.b.select1(t);        // positions (lo, hi] hold set t
        uint64_t hi = part.b.select1(t + 1);
        uint64_t len = hi - lo;
        uint64_t r0 = part.z.rank0(lo);         // side-0 ranks start after r0
        uint64_t count0 = part.z.rank0(hi) - r0;
        uint64_t r1 = part.z.rank1(lo);
        uint64_t count1 = len - count0;

        uint64_t i0 = 0, i1 = 0;
        MinmaxPair prev{};
        bool have_prev = false;
        for (uint64_t w = 1; w <= len; ++w) {
            bool take0;
            MinmaxPair p0{}, p1{};
            if (i0 < count0) p0 = minmax_sr(ctx, part, 0, static_cast<int64_t>(r0 + 1 + i0));
            if (i1 < count1) p1 = minmax_sr(ctx, part, 1, static_cast<int64_t>(r1 + 1 + i1));
            if (i0 < count0 && i1 < count1) {
                if (!p0.compatible(p1)) return std::nullopt;
                take0 = p0.preceq(p1);   // ties keep the side-0 node first
            } else {
                take0 = i0 < count0;
            }
            MinmaxPair cur = take0 ? p0 : p1;
            if (take0) ++i0; else ++i1;
            uint64_t pos = lo + w;
            zb.set(pos - 1, take0 ? 0 : 1);
            if (have_prev && !(cur == prev)) bb.set(pos - 2, 1);   // end the previous run
            prev = cur;
            have_prev = true;
        }
        bb.set(hi - 1, 1);
    }

    Partition next;
    next.b = BitVec(std::move(bb));
    next.z = BitVec(std::move(zb));
    return next;
}

FixpointResult refine_to_fixpoint(const UnionNfa& u) {
    RefineContext ctx(u);
    Partition cur = initial_partition(u);

    FixpointResult res;
    res.scratch_bits = 4 * cur.size();   // B, Z and their double buffers
    while (true) {
        ++res.iterations;
        auto next = refine_step(ctx, cur);
        if (!next) {
            res.status = RefineStatus::NoOrder;
            return res;
        }
        if (*next == cur) break;
        cur = std::move(*next);
    }

    // The pairwise minmax checks cannot see every monotonicity constraint:
    // an equality tie between pairs in different sets can hide a conflict
    // that only surfaces in the quotient. A Wheeler C-order of the union
    // would force the partition order of the quotient to be Wheeler, so a
    // failed check here proves no such order exists.
    ReducedAutomaton red = build_reduced(u, cur);
    if (validate_wheeler(red.nfa, identity_order(red.nfa.n))) {
        res.status = RefineStatus::NoOrder;
        return res;
    }

    res.partition = std::move(cur);
    // exact iff every set beyond the source pair is a singleton
    res.status = res.partition.num_sets() == res.partition.size() - 1 ? RefineStatus::Exact
                                                                      : RefineStatus::Reduced;
    return res;
}

ReducedAutomaton build_reduced(const UnionNfa& u, const Partition& part) {
    ReducedAutomaton out;
    int64_t nsets = static_cast<int64_t>(part.num_sets());
    out.set_of_node.assign(u.nfa.n, 0);
    for (int64_t v = 0; v < u.nfa.n; ++v) {
        if (v == u.nfa.source) out.set_of_node[v] = 0;
        else out.set_of_node[v] = static_cast<int64_t>(part.set_of(u.origin[v], u.orig_rank[v]));
    }

    out.nfa.n = nsets;
    out.nfa.source = 0;
    out.nfa.sigma = u.nfa.sigma;
    out.nfa.alpha = u.nfa.alpha;
    out.nfa.finals.assign(nsets, false);
    for (int64_t v = 0; v < u.nfa.n; ++v)
        if (u.nfa.finals[v]) out.nfa.finals[out.set_of_node[v]] = true;

    std::set<std::tuple<int64_t, int64_t, uint8_t>> seen;
    for (const auto& e : u.nfa.edges) {
        int64_t f = out.set_of_node[e.from], t = out.set_of_node[e.to];
        if (seen.insert({f, t, e.label}).second)
            out.nfa.edges.push_back({f, t, e.label});
    }
    return out;
}

}  // namespace wgm
