#include "wgm/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace wgm::oracle {

namespace {

// Emission of the BOSS arrays from an explicit node/edge listing. Nodes are
// reversed k-mers; edges are (source reversed k-mer, label).
BossGraph emit_from_sets(std::set<std::string> rev_kmers,
                         std::set<std::pair<std::string, uint8_t>> rev_edges, uint32_t k,
                         uint32_t sigma) {
    std::vector<std::string> order(rev_kmers.begin(), rev_kmers.end());   // plain lex sort

    std::map<std::string, uint64_t> rank;
    for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = i + 1;

    // destination of (rev_u, c) is c prepended to rev_u minus its first char,
    // i.e. reversed (u[2..k] c)
    auto rev_dest = [&](const std::string& rev_u, uint8_t c) {
        return static_cast<char>(c) + rev_u.substr(0, k - 1);
    };

    // smallest source per destination, found by scanning edges sorted by
    // (destination, source)
    std::vector<std::tuple<std::string, std::string, uint8_t>> by_dest;
    for (const auto& [rev_u, c] : rev_edges)
        by_dest.emplace_back(rev_dest(rev_u, c), rev_u, c);
    std::sort(by_dest.begin(), by_dest.end());
    std::map<std::string, std::string> min_source;
    for (const auto& [d, s, c] : by_dest)
        if (!min_source.count(d)) min_source[d] = s;

    std::vector<uint8_t> w;
    std::vector<bool> wm, lastb;
    for (const auto& rev_u : order) {
        std::vector<uint8_t> labels;
        for (const auto& [ru, c] : rev_edges)
            if (ru == rev_u) labels.push_back(c);
        std::sort(labels.begin(), labels.end());
        if (labels.empty()) {
            w.push_back(0);
            wm.push_back(false);
            lastb.push_back(true);
            continue;
        }
        for (size_t t = 0; t < labels.size(); ++t) {
            w.push_back(labels[t]);
            wm.push_back(min_source.at(rev_dest(rev_u, labels[t])) == rev_u);
            lastb.push_back(t + 1 == labels.size());
        }
    }

    BossGraph g;
    g.k = k;
    g.sigma = sigma;
    g.n = order.size();
    g.W = SymSeq(w, sigma);
    g.wminus = BitVec(wm);
    g.last = BitVec(lastb);
    g.finish();
    return g;
}

std::string reversed(const std::string& s) { return {s.rbegin(), s.rend()}; }

}  // namespace

BossGraph naive_boss(const std::vector<std::string>& collection, uint32_t k, uint32_t sigma) {
    if (collection.empty()) throw std::invalid_argument("naive_boss: empty collection");
    std::set<std::string> rev_kmers;
    std::set<std::pair<std::string, uint8_t>> rev_edges;
    for (const auto& s : collection) {
        if (s.empty()) throw std::invalid_argument("naive_boss: empty string");
        for (char ch : s)
            if (static_cast<uint8_t>(ch) < 1 || static_cast<uint8_t>(ch) > sigma)
                throw std::invalid_argument("naive_boss: symbol outside alphabet");
        std::string padded = std::string(k, '\0') + s;
        for (size_t i = 0; i + k <= padded.size(); ++i) {
            std::string km = padded.substr(i, k);
            rev_kmers.insert(reversed(km));
            if (i + k < padded.size())
                rev_edges.insert({reversed(km), static_cast<uint8_t>(padded[i + k])});
        }
    }
    return emit_from_sets(std::move(rev_kmers), std::move(rev_edges), k, sigma);
}

namespace {

void collect_graph(const BossGraph& g, std::set<std::string>& rev_kmers,
                   std::set<std::pair<std::string, uint8_t>>& rev_edges) {
    std::vector<std::string> kmers(g.n);
    for (uint64_t v = 1; v <= g.n; ++v) {
        kmers[v - 1] = node_kmer(g, v);
        rev_kmers.insert(reversed(kmers[v - 1]));
    }
    for (uint64_t i = 1; i <= g.m(); ++i) {
        uint8_t c = g.W.sym(i);
        if (c == 0) continue;
        uint64_t u = node_of_position(g, i);
        rev_edges.insert({reversed(kmers[u - 1]), c});
    }
}

}  // namespace

BossGraph naive_merge(const BossGraph& g0, const BossGraph& g1) {
    if (g0.k != g1.k) throw std::invalid_argument("naive_merge: order mismatch");
    if (g0.sigma != g1.sigma) throw std::invalid_argument("naive_merge: alphabet mismatch");
    std::set<std::string> rev_kmers;
    std::set<std::pair<std::string, uint8_t>> rev_edges;
    collect_graph(g0, rev_kmers, rev_edges);
    collect_graph(g1, rev_kmers, rev_edges);
    return emit_from_sets(std::move(rev_kmers), std::move(rev_edges), g0.k, g0.sigma);
}

ColoredUnion naive_merge_colored(const BossGraph& g0, const BossGraph& g1,
                                 const std::vector<std::vector<bool>>& rows0,
                                 const std::vector<std::vector<bool>>& rows1) {
    ColoredUnion out;
    out.graph = naive_merge(g0, g1);
    size_t c0 = rows0.empty() ? 0 : rows0[0].size();
    size_t c1 = rows1.empty() ? 0 : rows1[0].size();

    // (k-mer, label) -> input row, per side
    auto build_map = [](const BossGraph& g, const std::vector<std::vector<bool>>& rows) {
        std::map<std::pair<std::string, uint8_t>, std::vector<bool>> m;
        for (uint64_t i = 1; i <= g.m(); ++i) {
            uint8_t c = g.W.sym(i);
            if (c == 0) continue;
            m[{node_kmer(g, node_of_position(g, i)), c}] = rows[i - 1];
        }
        return m;
    };
    auto map0 = build_map(g0, rows0), map1 = build_map(g1, rows1);

    for (uint64_t i = 1; i <= out.graph.m(); ++i) {
        std::vector<bool> row(c0 + c1, false);
        uint8_t c = out.graph.W.sym(i);
        if (c != 0) {
            std::string km = node_kmer(out.graph, node_of_position(out.graph, i));
            if (auto it = map0.find({km, c}); it != map0.end())
                for (size_t t = 0; t < c0; ++t)
                    if (it->second[t]) row[t] = true;
            if (auto it = map1.find({km, c}); it != map1.end())
                for (size_t t = 0; t < c1; ++t)
                    if (it->second[t]) row[c0 + t] = true;
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::set<std::string> enumerate_language(const Nfa& a, int maxlen) {
    if (maxlen > Limits::kMaxWordLen)
        throw std::invalid_argument("enumerate_language: maxlen over cap");
    std::vector<std::vector<std::pair<uint8_t, int64_t>>> adj(a.n);
    for (const auto& e : a.edges) adj[e.from].push_back({e.label, e.to});

    std::set<std::string> words;
    std::vector<bool> start(a.n, false);
    start[a.source] = true;
    if (a.finals[a.source]) words.insert("");

    struct Item {
        std::vector<bool> states;
        std::string word;
    };
    std::vector<Item> frontier{{start, ""}};
    for (int len = 1; len <= maxlen; ++len) {
        std::vector<Item> next;
        for (const auto& item : frontier) {
            for (uint8_t c = 1; c <= a.sigma; ++c) {
                std::vector<bool> reach(a.n, false);
                bool any = false, fin = false;
                for (int64_t v = 0; v < a.n; ++v) {
                    if (!item.states[v]) continue;
                    for (auto [lab, to] : adj[v]) {
                        if (lab != c) continue;
                        reach[to] = true;
                        any = true;
                        if (a.finals[to]) fin = true;
                    }
                }
                if (!any) continue;
                std::string w = item.word + static_cast<char>(c);
                if (fin) words.insert(w);
                next.push_back({std::move(reach), std::move(w)});
            }
        }
        frontier = std::move(next);
    }
    return words;
}

std::optional<std::vector<int64_t>> exhaustive_corder(const UnionNfa& u) {
    std::vector<int64_t> as, bs;
    for (int64_t v = 0; v < u.nfa.n; ++v) {
        if (u.origin[v] == 0) as.push_back(v);
        else if (u.origin[v] == 1) bs.push_back(v);
    }
    if (static_cast<int64_t>(as.size() + bs.size()) + 1 > Limits::kMaxCorderNodes)
        throw std::invalid_argument("exhaustive_corder: automaton over the size cap");

    size_t total = as.size() + bs.size();
    std::vector<int64_t> order(total + 1);
    order[0] = u.nfa.source;

    // every interleaving = choice of the positions taken by side-0 nodes
    std::vector<bool> pick(total, false);
    std::fill(pick.begin(), pick.begin() + as.size(), true);
    std::sort(pick.begin(), pick.end());   // start from the lexicographically first mask
    std::optional<std::vector<int64_t>> found;
    do {
        size_t ia = 0, ib = 0;
        for (size_t t = 0; t < total; ++t)
            order[t + 1] = pick[t] ? as[ia++] : bs[ib++];
        if (!validate_wheeler(u.nfa, order)) {
            found = order;
            break;
        }
    } while (std::next_permutation(pick.begin(), pick.end()));
    return found;
}

std::vector<uint32_t> brute_lcs(const std::vector<std::string>& kmers) {
    std::vector<uint32_t> out;
    for (size_t i = 1; i < kmers.size(); ++i) {
        const std::string& a = kmers[i - 1];
        const std::string& b = kmers[i];
        uint32_t l = 0;
        while (l < a.size() && l < b.size() && a[a.size() - 1 - l] == b[b.size() - 1 - l]) ++l;
        out.push_back(l);
    }
    return out;
}

std::vector<std::string> all_kmers(const BossGraph& g) {
    std::vector<std::string> out(g.n);
    for (uint64_t v = 1; v <= g.n; ++v) out[v - 1] = node_kmer(g, v);
    return out;
}

}  // namespace wgm::oracle
