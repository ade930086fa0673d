#include "wgm/boss.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

namespace wgm {

namespace {

// colex comparison: lexicographic on reversed strings
bool colex_less(const std::string& a, const std::string& b) {
    auto ai = a.rbegin(), bi = b.rbegin();
    for (; ai != a.rend() && bi != b.rend(); ++ai, ++bi) {
        if (*ai != *bi) return static_cast<uint8_t>(*ai) < static_cast<uint8_t>(*bi);
    }
    return a.size() < b.size();
}

}  // namespace

void BossGraph::finish() {
    std::vector<uint8_t> flagged(W.size(), 0);
    for (size_t i = 1; i <= W.size(); ++i)
        if (wminus.bit(i)) flagged[i - 1] = W.sym(i);
    wflag = SymSeq(flagged, sigma);
}

uint64_t BossGraph::flagged_before(uint8_t c) const {
    uint64_t total = 0;
    for (uint8_t x = 1; x < c; ++x) total += wflag.count(x);
    return total;
}

BossGraph build_boss(const std::vector<std::string>& collection, uint32_t k, uint32_t sigma) {
    if (k < 1) throw std::invalid_argument("build_boss: k must be at least 1");
    if (collection.empty()) throw std::invalid_argument("build_boss: empty collection");

    std::set<std::string> kmers;
    std::map<std::string, std::set<uint8_t>> out;   // k-mer -> outgoing labels
    for (const auto& s : collection) {
        if (s.empty()) throw std::invalid_argument("build_boss: empty string");
        std::string padded(k, '\0');
        for (char ch : s) {
            uint8_t v = static_cast<uint8_t>(ch);
            if (v < 1 || v > sigma)
                throw std::invalid_argument("build_boss: symbol outside alphabet");
            padded.push_back(ch);
        }
        for (size_t i = 0; i + k <= padded.size(); ++i) {
            std::string km = padded.substr(i, k);
            kmers.insert(km);
            if (i + k < padded.size())
                out[km].insert(static_cast<uint8_t>(padded[i + k]));
        }
    }

    std::vector<std::string> nodes(kmers.begin(), kmers.end());
    std::sort(nodes.begin(), nodes.end(), colex_less);

    std::map<std::string, uint64_t> rank;   // 1-based colex ranks
    for (size_t i = 0; i < nodes.size(); ++i) rank[nodes[i]] = i + 1;

    // first (smallest-rank) source per destination decides the wminus flag
    std::map<uint64_t, uint64_t> first_source;
    for (size_t i = 0; i < nodes.size(); ++i) {
        auto it = out.find(nodes[i]);
        if (it == out.end()) continue;
        for (uint8_t c : it->second) {
            std::string dest = nodes[i].substr(1) + static_cast<char>(c);
            uint64_t dv = rank.at(dest);
            if (!first_source.count(dv)) first_source[dv] = i + 1;
        }
    }

    std::vector<uint8_t> w;
    std::vector<bool> wm, lastbits;
    for (size_t i = 0; i < nodes.size(); ++i) {
        auto it = out.find(nodes[i]);
        if (it == out.end() || it->second.empty()) {
            w.push_back(0);
            wm.push_back(false);
            lastbits.push_back(true);
            continue;
        }
        size_t cnt = 0;
        for (uint8_t c : it->second) {
            std::string dest = nodes[i].substr(1) + static_cast<char>(c);
            uint64_t dv = rank.at(dest);
            w.push_back(c);
            wm.push_back(first_source.at(dv) == i + 1);
            lastbits.push_back(++cnt == it->second.size());
        }
    }

    BossGraph g;
    g.k = k;
    g.sigma = sigma;
    g.n = nodes.size();
    g.W = SymSeq(w, sigma);
    g.wminus = BitVec(wm);
    g.last = BitVec(lastbits);
    g.finish();
    return g;
}

uint64_t node_of_position(const BossGraph& g, uint64_t i) {
    if (i < 1 || i > g.m()) throw std::out_of_range("node_of_position: out of range");
    return g.last.rank1(i - 1) + 1;
}

std::pair<uint64_t, uint64_t> node_range(const BossGraph& g, uint64_t v) {
    if (v < 1 || v > g.n) throw std::out_of_range("node_range: node out of range");
    uint64_t begin = v == 1 ? 1 : g.last.select1(v - 1) + 1;
    return {begin, g.last.select1(v)};
}

uint64_t forward(const BossGraph& g, uint64_t i) {
    if (i < 1 || i > g.m()) throw std::out_of_range("forward: out of range");
    if (!g.wminus.bit(i)) throw std::invalid_argument("forward: wminus[i] is 0");
    uint8_t c = g.W.sym(i);
    return 1 + g.flagged_before(c) + g.wflag.rank(c, i);
}

std::string node_kmer(const BossGraph& g, uint64_t v) {
    if (v < 1 || v > g.n) throw std::out_of_range("node_kmer: node out of range");
    std::string km(g.k, '\0');
    uint64_t cur = v;
    for (uint32_t pos = g.k; pos >= 1 && cur != 1; --pos) {
        // last symbol of cur: the flagged-label class whose destination range
        // contains cur
        uint8_t c = 1;
        uint64_t base = 1;   // nodes before the first c-destination
        while (base + g.wflag.count(c) < cur) {
            base += g.wflag.count(c);
            ++c;
        }
        km[pos - 1] = static_cast<char>(c);
        uint64_t i = g.wflag.select(c, cur - base);   // flagged edge into cur
        cur = node_of_position(g, i);
    }
    return km;
}

std::optional<BossViolation> validate_boss(const BossGraph& g) {
    uint64_t m = g.m();
    if (m == 0) return BossViolation{0, "empty W"};
    if (g.wminus.size() != m || g.last.size() != m)
        return BossViolation{0, "array length mismatch"};
    if (g.last.ones() != g.n)
        return BossViolation{0, "last has " + std::to_string(g.last.ones()) +
                                    " ones, expected n=" + std::to_string(g.n)};
    if (g.wminus.ones() != g.n - 1)
        return BossViolation{0, "wminus has " + std::to_string(g.wminus.ones()) +
                                    " ones, expected n-1=" + std::to_string(g.n - 1)};
    if (!g.last.bit(m)) return BossViolation{m, "last[m] is not 1"};

    for (uint64_t v = 1; v <= g.n; ++v) {
        auto [b, e] = node_range(g, v);
        for (uint64_t i = b; i <= e; ++i) {
            uint8_t c = g.W.sym(i);
            if (c == 0) {
                if (b != e) return BossViolation{i, "$ inside a multi-label segment"};
                if (g.wminus.bit(i)) return BossViolation{i, "$ entry flagged in wminus"};
            } else if (i > b && g.W.sym(i - 1) >= c) {
                return BossViolation{i, "labels not strictly increasing in segment"};
            }
        }
    }
    return std::nullopt;
}

void BossGraph::serialize(std::ostream& out) const {
    out.write("BOSS", 4);
    write_u8(out, 1);
    write_u16(out, static_cast<uint16_t>(k));
    write_u16(out, static_cast<uint16_t>(sigma));
    write_u64(out, n);
    write_u64(out, m());
    W.serialize(out);
    wminus.serialize(out);
    last.serialize(out);
}

BossGraph BossGraph::deserialize(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::string(magic, 4) != "BOSS")
        throw std::runtime_error("bad BOSS magic");
    uint8_t version = read_u8(in);
    if (version != 1) throw std::runtime_error("unsupported BOSS version");
    BossGraph g;
    g.k = read_u16(in);
    g.sigma = read_u16(in);
    g.n = read_u64(in);
    uint64_t m = read_u64(in);
    g.W = SymSeq::deserialize(in, g.sigma);
    g.wminus = BitVec::deserialize(in);
    g.last = BitVec::deserialize(in);
    if (g.W.size() != m || g.wminus.size() != m || g.last.size() != m)
        throw std::runtime_error("BOSS: length fields disagree with payload");
    g.finish();
    return g;
}

}  // namespace wgm
