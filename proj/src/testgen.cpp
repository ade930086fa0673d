#include "wgm/testgen.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace wgm::testgen {

std::vector<std::string> random_collection(Rng& rng, uint32_t sigma, size_t max_strings,
                                           size_t max_len) {
    std::uniform_int_distribution<size_t> nstr(1, max_strings);
    std::uniform_int_distribution<size_t> len(1, max_len);
    std::uniform_int_distribution<uint32_t> sym(1, sigma);
    std::vector<std::string> out(nstr(rng));
    for (auto& s : out) {
        s.resize(len(rng));
        for (auto& ch : s) ch = static_cast<char>(sym(rng));
    }
    return out;
}

namespace {

bool all_reachable(const Nfa& a) {
    std::vector<bool> seen(a.n, false);
    std::queue<int64_t> q;
    q.push(a.source);
    seen[a.source] = true;
    while (!q.empty()) {
        int64_t v = q.front();
        q.pop();
        for (const auto& e : a.edges)
            if (e.from == v && !seen[e.to]) {
                seen[e.to] = true;
                q.push(e.to);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// makes every node co-reachable to a final by promoting stranded nodes
void patch_finals(Nfa& a) {
    while (true) {
        std::vector<bool> co(a.n, false);
        for (int64_t v = 0; v < a.n; ++v) co[v] = a.finals[v];
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& e : a.edges)
                if (co[e.to] && !co[e.from]) {
                    co[e.from] = true;
                    changed = true;
                }
        }
        int64_t stranded = -1;
        for (int64_t v = 0; v < a.n; ++v)
            if (!co[v]) stranded = v;
        if (stranded < 0) return;
        a.finals[stranded] = true;
    }
}

// relabels the nodes of a so that ids follow the given order
Nfa relabel(const Nfa& a, const std::vector<int64_t>& order) {
    std::vector<int64_t> rank_of(a.n);
    for (size_t r = 0; r < order.size(); ++r) rank_of[order[r]] = static_cast<int64_t>(r);
    Nfa out;
    out.n = a.n;
    out.source = rank_of[a.source];
    out.sigma = a.sigma;
    out.alpha = a.alpha;
    out.finals.assign(a.n, false);
    for (int64_t v = 0; v < a.n; ++v) out.finals[rank_of[v]] = a.finals[v];
    for (const auto& e : a.edges)
        out.edges.push_back({rank_of[e.from], rank_of[e.to], e.label});
    return out;
}

}  // namespace

Nfa random_wheeler_automaton(Rng& rng, uint32_t sigma, int64_t max_n) {
    std::uniform_int_distribution<int64_t> nn(2, max_n);
    std::uniform_int_distribution<uint32_t> sym(1, sigma);
    std::uniform_int_distribution<int> coin(0, 1);

    while (true) {
        Nfa a;
        a.n = nn(rng);
        a.source = 0;
        a.sigma = sigma;
        a.alpha.clear();
        for (uint32_t c = 0; c < sigma; ++c) a.alpha.push_back(static_cast<char>('a' + c));
        a.finals.assign(a.n, false);

        // one incoming label per node keeps lambda well defined
        std::uniform_int_distribution<int64_t> any(0, a.n - 1);
        for (int64_t v = 1; v < a.n; ++v) {
            uint8_t lab = static_cast<uint8_t>(sym(rng));
            int64_t indeg = 1 + coin(rng);
            for (int64_t t = 0; t < indeg; ++t)
                a.edges.push_back({any(rng), v, lab});
        }
        std::sort(a.edges.begin(), a.edges.end(), [](const Nfa::Edge& x, const Nfa::Edge& y) {
            return std::tie(x.from, x.to, x.label) < std::tie(y.from, y.to, y.label);
        });
        a.edges.erase(std::unique(a.edges.begin(), a.edges.end(),
                                  [](const Nfa::Edge& x, const Nfa::Edge& y) {
                                      return x.from == y.from && x.to == y.to &&
                                             x.label == y.label;
                                  }),
                      a.edges.end());

        if (!all_reachable(a)) continue;
        for (int64_t v = 0; v < a.n; ++v)
            if (coin(rng)) a.finals[v] = true;
        if (std::none_of(a.finals.begin(), a.finals.end(), [](bool b) { return b; }))
            a.finals[a.n - 1] = true;
        patch_finals(a);

        // search for a Wheeler order with the source first
        std::vector<int64_t> rest(a.n - 1);
        std::iota(rest.begin(), rest.end(), 1);
        do {
            std::vector<int64_t> order;
            order.push_back(0);
            order.insert(order.end(), rest.begin(), rest.end());
            if (!validate_wheeler(a, order)) return relabel(a, order);
        } while (std::next_permutation(rest.begin(), rest.end()));
        // no Wheeler order: draw a fresh graph
    }
}

std::vector<std::pair<uint32_t, uint32_t>> random_2sat(Rng& rng, int64_t num_vars,
                                                       size_t num_clauses) {
    std::uniform_int_distribution<uint32_t> lit(0, static_cast<uint32_t>(2 * num_vars - 1));
    std::vector<std::pair<uint32_t, uint32_t>> out(num_clauses);
    for (auto& cl : out) cl = {lit(rng), lit(rng)};
    return out;
}

}  // namespace wgm::testgen
