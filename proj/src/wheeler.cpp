#include "wgm/wheeler.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wgm/boss.hpp"

namespace wgm {

std::vector<int64_t> identity_order(int64_t n) {
    std::vector<int64_t> o(n);
    for (int64_t i = 0; i < n; ++i) o[i] = i;
    return o;
}

uint64_t WheelerGraph::in_degree(uint64_t v) const {
    return I.select1(v) - I.select1(v - 1) - 1;
}

uint64_t WheelerGraph::out_degree(uint64_t v) const {
    return O.select1(v) - O.select1(v - 1) - 1;
}

// ---------------------------------------------------------------------------
// validation

namespace {

std::vector<Nfa::Edge> dedup_edges(const Nfa& a) {
    std::set<std::tuple<int64_t, int64_t, uint8_t>> seen;
    std::vector<Nfa::Edge> out;
    for (const auto& e : a.edges)
        if (seen.insert({e.from, e.to, e.label}).second) out.push_back(e);
    return out;
}

std::string edge_str(const Nfa& a, const Nfa::Edge& e) {
    std::ostringstream os;
    os << "(" << e.from + 1 << "," << e.to + 1 << "," << a.label_char(e.label) << ")";
    return os.str();
}

}  // namespace

std::optional<WheelerViolation> validate_wheeler(const Nfa& a, const std::vector<int64_t>& order) {
    if (static_cast<int64_t>(order.size()) != a.n)
        return WheelerViolation{"order size does not match node count", std::nullopt};
    std::vector<int64_t> rank_of(a.n, -1);
    for (size_t r = 0; r < order.size(); ++r) {
        if (order[r] < 0 || order[r] >= a.n || rank_of[order[r]] != -1)
            return WheelerViolation{"order is not a permutation", std::nullopt};
        rank_of[order[r]] = static_cast<int64_t>(r) + 1;
    }

    std::vector<int64_t> indeg(a.n, 0);
    for (const auto& e : a.edges) ++indeg[e.to];
    int64_t max0 = 0, minpos = a.n + 1;
    for (int64_t v = 0; v < a.n; ++v) {
        if (indeg[v] == 0) max0 = std::max(max0, rank_of[v]);
        else minpos = std::min(minpos, rank_of[v]);
    }
    if (max0 > 0 && minpos <= a.n && max0 > minpos)
        return WheelerViolation{"an in-degree-0 node is ranked after a node with in-degree > 0",
                                std::nullopt};

    struct Item {
        uint8_t label;
        int64_t urank, vrank;
        Nfa::Edge edge;
    };
    std::vector<Item> items;
    for (const auto& e : dedup_edges(a))
        items.push_back({e.label, rank_of[e.from], rank_of[e.to], e});
    std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
        return std::tie(x.label, x.urank, x.vrank) < std::tie(y.label, y.urank, y.vrank);
    });

    // within a label block destinations must be nondecreasing (4b); across
    // blocks every earlier destination must precede every later one (4a)
    int64_t prev_max = 0;
    Item prev_max_item{};
    for (size_t i = 0; i < items.size();) {
        size_t j = i;
        while (j < items.size() && items[j].label == items[i].label) ++j;
        if (prev_max != 0 && items[i].vrank <= prev_max)
            return WheelerViolation{
                "label monotonicity violated: " + edge_str(a, prev_max_item.edge) + " vs " +
                    edge_str(a, items[i].edge),
                std::make_pair(prev_max_item.edge, items[i].edge)};
        for (size_t t = i + 1; t < j; ++t) {
            if (items[t].vrank < items[t - 1].vrank)
                return WheelerViolation{
                    "source monotonicity violated: " + edge_str(a, items[t - 1].edge) + " vs " +
                        edge_str(a, items[t].edge),
                    std::make_pair(items[t - 1].edge, items[t].edge)};
        }
        if (items[j - 1].vrank > prev_max) {
            prev_max = items[j - 1].vrank;
            prev_max_item = items[j - 1];
        }
        i = j;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// encode / decode

WheelerGraph encode_wheeler(const Nfa& a, const std::vector<int64_t>& order) {
    if (auto bad = validate_wheeler(a, order))
        throw std::invalid_argument("encode_wheeler: " + bad->message);
    std::vector<int64_t> rank_of(a.n);
    for (size_t r = 0; r < order.size(); ++r) rank_of[order[r]] = static_cast<int64_t>(r) + 1;

    auto edges = dedup_edges(a);
    uint64_t n = a.n, m = edges.size();

    std::vector<uint64_t> indeg(n + 1, 0), outdeg(n + 1, 0);
    std::vector<std::vector<uint8_t>> out_labels(n + 1);
    for (const auto& e : edges) {
        ++indeg[rank_of[e.to]];
        ++outdeg[rank_of[e.from]];
        out_labels[rank_of[e.from]].push_back(e.label);
    }

    std::vector<bool> ibits, obits;
    std::vector<uint8_t> lsyms;
    for (uint64_t v = 1; v <= n; ++v) {
        for (uint64_t t = 0; t < indeg[v]; ++t) ibits.push_back(false);
        ibits.push_back(true);
        for (uint64_t t = 0; t < outdeg[v]; ++t) obits.push_back(false);
        obits.push_back(true);
        std::sort(out_labels[v].begin(), out_labels[v].end());
        for (uint8_t c : out_labels[v]) lsyms.push_back(c);
    }

    std::vector<uint64_t> label_count(a.sigma + 1, 0);
    for (uint8_t c : lsyms) ++label_count[c];
    std::vector<bool> cpbits(m, false);
    uint64_t before = 0;
    for (uint32_t c = 1; c <= a.sigma; ++c) {
        if (before < m) cpbits[before] = true;   // position 1 + C[c]
        before += label_count[c];
    }

    std::vector<bool> fin(n, false);
    for (int64_t v = 0; v < a.n; ++v)
        if (a.finals[v]) fin[rank_of[v] - 1] = true;

    WheelerGraph g;
    g.n = n;
    g.m = m;
    g.sigma = a.sigma;
    g.I = BitVec(ibits);
    g.O = BitVec(obits);
    g.L = SymSeq(lsyms, a.sigma);
    g.Cp = BitVec(cpbits);
    g.finals = BitVec(fin);
    g.alpha = a.alpha;
    return g;
}

Nfa decode_wheeler(const WheelerGraph& g) {
    if (g.I.size() != g.n + g.m || g.O.size() != g.n + g.m)
        throw std::runtime_error("decode_wheeler: I/O length mismatch");
    if (g.I.ones() != g.n || g.O.ones() != g.n)
        throw std::runtime_error("decode_wheeler: 1-count mismatch");
    if (g.L.size() != g.m) throw std::runtime_error("decode_wheeler: L length mismatch");

    Nfa a;
    a.n = static_cast<int64_t>(g.n);
    a.source = 0;
    a.sigma = g.sigma;
    a.alpha = g.alpha;
    a.finals.assign(g.n, false);
    for (uint64_t v = 1; v <= g.n; ++v)
        if (g.finals.size() >= v && g.finals.bit(v)) a.finals[v - 1] = true;

    // the t-th incoming slot pairs with the t-th edge in (label, L-order);
    // recover both endpoints by label class
    uint64_t t = 0;
    for (uint8_t c = 1; c <= g.sigma; ++c) {
        uint64_t cnt = g.L.count(c);
        for (uint64_t j = 1; j <= cnt; ++j) {
            ++t;
            uint64_t h = g.L.select(c, j);
            uint64_t u = 1 + g.O.rank1(g.O.select0(h));
            uint64_t v = 1 + g.I.rank1(g.I.select0(t));
            a.edges.push_back({static_cast<int64_t>(u - 1), static_cast<int64_t>(v - 1), c});
        }
    }
    return a;
}

// ---------------------------------------------------------------------------
// navigation

namespace {

// maps a C'-boundary index to the actual symbol (boundary bits coincide for
// unused symbols)
uint8_t used_symbol(const WheelerGraph& g, uint64_t cidx) {
    uint64_t seen = 0;
    for (uint8_t c = 1; c <= g.sigma; ++c) {
        if (g.L.count(c) == 0) continue;
        if (++seen == cidx) return c;
    }
    throw std::logic_error("used_symbol: class index out of range");
}

// resolves the source node of incoming slot t via the C'/L/O chain
uint64_t slot_source(const WheelerGraph& g, uint64_t t) {
    uint64_t cidx = g.Cp.rank1(t);
    uint8_t c = used_symbol(g, cidx);
    uint64_t j = 1 + t - g.Cp.select1(cidx);
    uint64_t h = g.L.select(c, j);
    return 1 + g.O.rank1(g.O.select0(h));
}

}  // namespace

BackwardStep backward_min(const WheelerGraph& g, uint64_t v) {
    if (v < 1 || v > g.n) throw std::out_of_range("backward_min: node out of range");
    BackwardStep r;
    r.kpos = 1 + g.I.select1(v - 1);
    if (g.I.bit(r.kpos)) throw std::invalid_argument("backward_min: node has in-degree 0");
    uint64_t t = g.I.rank0(r.kpos);
    uint64_t cidx = g.Cp.rank1(t);
    r.c = used_symbol(g, cidx);
    r.j = 1 + t - g.Cp.select1(cidx);
    r.h = g.L.select(r.c, r.j);
    r.u = 1 + g.O.rank1(g.O.select0(r.h));
    return r;
}

uint64_t pred_min(const WheelerGraph& g, uint64_t v) { return backward_min(g, v).u; }

uint64_t pred_max(const WheelerGraph& g, uint64_t v) {
    if (v < 1 || v > g.n) throw std::out_of_range("pred_max: node out of range");
    if (g.in_degree(v) == 0) throw std::invalid_argument("pred_max: node has in-degree 0");
    uint64_t t = g.I.rank0(g.I.select1(v));   // last incoming slot of v
    return slot_source(g, t);
}

// ---------------------------------------------------------------------------
// union automaton

std::vector<uint8_t> incoming_labels(const Nfa& a) {
    std::vector<uint8_t> lab(a.n, 0);
    for (const auto& e : a.edges) {
        if (lab[e.to] == 0) lab[e.to] = e.label;
        else if (lab[e.to] != e.label)
            throw std::invalid_argument("node " + std::to_string(e.to + 1) +
                                        " has incoming edges with mixed labels");
    }
    return lab;
}

void unify_alphabets(Nfa& a0, Nfa& a1) {
    std::set<char> chars(a0.alpha.begin(), a0.alpha.end());
    chars.insert(a1.alpha.begin(), a1.alpha.end());
    std::string merged(chars.begin(), chars.end());
    auto remap = [&](Nfa& a) {
        std::vector<uint8_t> to_new(a.sigma + 1, 0);
        for (uint32_t c = 1; c <= a.sigma; ++c)
            to_new[c] = static_cast<uint8_t>(merged.find(a.alpha[c - 1]) + 1);
        for (auto& e : a.edges) e.label = to_new[e.label];
        a.alpha = merged;
        a.sigma = static_cast<uint32_t>(merged.size());
    };
    remap(a0);
    remap(a1);
}

int64_t UnionNfa::node_of(int b, int64_t r) const {
    return b == 0 ? r - 1 : n0 + r - 2;
}

UnionNfa union_automaton(const Nfa& a0_in, const Nfa& a1_in) {
    Nfa a0 = a0_in, a1 = a1_in;
    unify_alphabets(a0, a1);
    for (const Nfa* a : {&a0, &a1}) {
        if (a->source != 0)
            throw std::invalid_argument("union_automaton: source must be the rank-1 node");
        std::vector<int64_t> indeg(a->n, 0);
        for (const auto& e : a->edges) ++indeg[e.to];
        if (indeg[0] != 0)
            throw std::invalid_argument("union_automaton: source has incoming edges");
        for (int64_t v = 1; v < a->n; ++v)
            if (indeg[v] == 0)
                throw std::invalid_argument("union_automaton: non-source node with in-degree 0");
        if (auto bad = validate_wheeler(*a, identity_order(a->n)))
            throw std::invalid_argument("union_automaton: input is not Wheeler-ordered: " +
                                        bad->message);
    }

    UnionNfa u;
    u.n0 = a0.n;
    u.n1 = a1.n;
    u.nfa.n = 1 + (a0.n - 1) + (a1.n - 1);
    u.nfa.source = 0;
    u.nfa.sigma = a0.sigma;
    u.nfa.alpha = a0.alpha;
    u.nfa.finals.assign(u.nfa.n, false);
    u.origin.assign(u.nfa.n, -1);
    u.orig_rank.assign(u.nfa.n, 1);

    for (int64_t i = 1; i < a0.n; ++i) {
        u.origin[i] = 0;
        u.orig_rank[i] = i + 1;
        u.nfa.finals[i] = a0.finals[i];
    }
    for (int64_t i = 1; i < a1.n; ++i) {
        int64_t id = (a0.n - 1) + i;
        u.origin[id] = 1;
        u.orig_rank[id] = i + 1;
        u.nfa.finals[id] = a1.finals[i];
    }
    u.nfa.finals[0] = a0.finals[0] || a1.finals[0];

    for (const auto& e : a0.edges)
        u.nfa.edges.push_back({e.from, e.to, e.label});
    for (const auto& e : a1.edges) {
        int64_t f = e.from == 0 ? 0 : (a0.n - 1) + e.from;
        int64_t t = (a0.n - 1) + e.to;
        u.nfa.edges.push_back({f, t, e.label});
    }
    return u;
}

// ---------------------------------------------------------------------------
// BOSS bridge

WheelerGraph boss_to_wheeler(const BossGraph& g) {
    Nfa a;
    a.n = static_cast<int64_t>(g.n);
    a.source = 0;
    a.sigma = g.sigma;
    a.finals.assign(g.n, false);
    for (uint64_t i = 1; i <= g.m(); ++i) {
        uint8_t c = g.W.sym(i);
        if (c == 0) continue;
        uint64_t from = node_of_position(g, i);
        uint64_t to = 1 + g.flagged_before(c) + g.wflag.rank(c, i);
        a.edges.push_back({static_cast<int64_t>(from - 1), static_cast<int64_t>(to - 1), c});
    }
    return encode_wheeler(a, identity_order(a.n));
}

// ---------------------------------------------------------------------------
// text format and serialization

Nfa parse_nfa_text(std::istream& in) {
    Nfa a;
    a.n = -1;
    std::string line;
    size_t lineno = 0;
    std::vector<std::tuple<int64_t, int64_t, char>> raw_edges;
    std::vector<int64_t> raw_finals;
    int64_t source = -1;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#') continue;
        auto fail = [&](const std::string& what) {
            throw std::runtime_error("NFA text line " + std::to_string(lineno) + ": " + what);
        };
        if (word == "nodes") {
            std::string kw;
            if (!(ls >> a.n >> kw >> source) || kw != "source" || a.n < 1)
                fail("expected 'nodes N source S'");
        } else if (word == "edge") {
            int64_t ufrom, uto;
            std::string lab;
            if (!(ls >> ufrom >> uto >> lab) || lab.size() != 1)
                fail("expected 'edge u v c'");
            raw_edges.emplace_back(ufrom, uto, lab[0]);
        } else if (word == "finals") {
            int64_t f;
            while (ls >> f) raw_finals.push_back(f);
        } else {
            fail("unknown directive '" + word + "'");
        }
    }
    if (a.n < 1) throw std::runtime_error("NFA text: missing 'nodes' line");
    if (source < 1 || source > a.n) throw std::runtime_error("NFA text: bad source id");
    a.source = source - 1;

    std::set<char> chars;
    for (auto& [f, t, c] : raw_edges) chars.insert(c);
    a.alpha.assign(chars.begin(), chars.end());
    a.sigma = static_cast<uint32_t>(a.alpha.size());
    a.finals.assign(a.n, false);
    for (int64_t f : raw_finals) {
        if (f < 1 || f > a.n) throw std::runtime_error("NFA text: final id out of range");
        a.finals[f - 1] = true;
    }
    for (auto& [f, t, c] : raw_edges) {
        if (f < 1 || f > a.n || t < 1 || t > a.n)
            throw std::runtime_error("NFA text: edge endpoint out of range");
        uint8_t lab = static_cast<uint8_t>(a.alpha.find(c) + 1);
        a.edges.push_back({f - 1, t - 1, lab});
    }
    return a;
}

void write_nfa_text(std::ostream& out, const Nfa& a) {
    out << "nodes " << a.n << " source " << a.source + 1 << "\n";
    for (const auto& e : a.edges)
        out << "edge " << e.from + 1 << " " << e.to + 1 << " " << a.label_char(e.label) << "\n";
    out << "finals";
    for (int64_t v = 0; v < a.n; ++v)
        if (a.finals[v]) out << " " << v + 1;
    out << "\n";
}

void WheelerGraph::serialize(std::ostream& out) const {
    out.write("WGR1", 4);
    write_u64(out, n);
    write_u64(out, m);
    write_u16(out, static_cast<uint16_t>(sigma));
    I.serialize(out);
    O.serialize(out);
    L.serialize(out);
    Cp.serialize(out);
    finals.serialize(out);
}

WheelerGraph WheelerGraph::deserialize(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::string(magic, 4) != "WGR1")
        throw std::runtime_error("bad WGR1 magic");
    WheelerGraph g;
    g.n = read_u64(in);
    g.m = read_u64(in);
    g.sigma = read_u16(in);
    g.I = BitVec::deserialize(in);
    g.O = BitVec::deserialize(in);
    g.L = SymSeq::deserialize(in, g.sigma);
    g.Cp = BitVec::deserialize(in);
    g.finals = BitVec::deserialize(in);
    if (g.I.size() != g.n + g.m || g.O.size() != g.n + g.m || g.L.size() != g.m ||
        g.Cp.size() != g.m || g.finals.size() != g.n)
        throw std::runtime_error("WGR1: length fields disagree with payload");
    if (g.I.ones() != g.n || g.O.ones() != g.n)
        throw std::runtime_error("WGR1: degree vectors malformed");
    return g;
}

}  // namespace wgm
