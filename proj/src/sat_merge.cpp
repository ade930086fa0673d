#include "wgm/sat_merge.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace wgm {

void SatInstance::write_dimacs(std::ostream& out) const {
    out << "p cnf " << num_vars() << " " << clauses.size() << "\n";
    auto lit = [](uint32_t l) {
        int64_t v = static_cast<int64_t>(l / 2) + 1;
        return (l & 1) ? -v : v;
    };
    for (auto [a, b] : clauses) out << lit(a) << " " << lit(b) << " 0\n";
}

SatInstance build_instance(const UnionNfa& u) {
    SatInstance inst;
    inst.na = u.n0 - 1;
    inst.nb = u.n1 - 1;
    const int64_t na = inst.na, nb = inst.nb;

    std::vector<uint8_t> lambda = incoming_labels(u.nfa);

    auto x = [&](int64_t i, int64_t j) { return inst.var(i, j); };

    // transitivity of the induced total order
    for (int64_t i = 1; i <= na; ++i)
        for (int64_t j = 1; j + 1 <= nb; ++j)
            inst.add_implication(SatInstance::pos(x(i, j)), SatInstance::pos(x(i, j + 1)));
    for (int64_t i = 2; i <= na; ++i)
        for (int64_t j = 1; j <= nb; ++j)
            inst.add_implication(SatInstance::pos(x(i, j)), SatInstance::pos(x(i - 1, j)));
    for (int64_t i = 1; i <= na; ++i)
        for (int64_t j = 2; j <= nb; ++j)
            inst.add_implication(SatInstance::neg(x(i, j)), SatInstance::neg(x(i, j - 1)));
    for (int64_t i = 1; i + 1 <= na; ++i)
        for (int64_t j = 1; j <= nb; ++j)
            inst.add_implication(SatInstance::neg(x(i, j)), SatInstance::neg(x(i + 1, j)));
    inst.transitivity_clauses = inst.clauses.size();

    // cross pairs with different incoming labels are ordered by label
    for (int64_t i = 1; i <= na; ++i) {
        uint8_t a = lambda[u.node_of(0, i + 1)];
        for (int64_t j = 1; j <= nb; ++j) {
            uint8_t ap = lambda[u.node_of(1, j + 1)];
            if (a == ap) continue;
            inst.add_unit(a < ap ? SatInstance::pos(x(i, j)) : SatInstance::neg(x(i, j)));
            ++inst.label_unit_clauses;
        }
    }

    // equal-labeled cross edge pairs; an edge from the fused source forces
    // the other destination (the source is minimal in every order)
    std::vector<Nfa::Edge> e0, e1;
    for (const auto& e : u.nfa.edges) {
        int8_t side = u.origin[e.to];
        (side == 0 ? e0 : e1).push_back(e);
    }
    for (const auto& ea : e0) {
        int64_t kk = u.orig_rank[ea.to] - 1;
        for (const auto& eb : e1) {
            if (ea.label != eb.label) continue;
            int64_t hh = u.orig_rank[eb.to] - 1;
            bool sa = ea.from == u.nfa.source;
            bool sb = eb.from == u.nfa.source;
            if (sa && sb) continue;
            if (sa) {
                inst.add_unit(SatInstance::pos(x(kk, hh)));
                ++inst.source_unit_clauses;
            } else if (sb) {
                inst.add_unit(SatInstance::neg(x(kk, hh)));
                ++inst.source_unit_clauses;
            } else {
                int64_t ii = u.orig_rank[ea.from] - 1;
                int64_t jj = u.orig_rank[eb.from] - 1;
                inst.add_implication(SatInstance::pos(x(ii, jj)), SatInstance::pos(x(kk, hh)));
                inst.add_implication(SatInstance::neg(x(ii, jj)), SatInstance::neg(x(kk, hh)));
                inst.edge_pair_clauses += 2;
            }
        }
    }
    return inst;
}

// ---------------------------------------------------------------------------
// solver: iterative Tarjan over the implication graph

std::optional<std::vector<bool>> solve_2sat(int64_t num_vars,
                                            const std::vector<std::pair<uint32_t, uint32_t>>& clauses) {
    size_t nlits = static_cast<size_t>(2 * num_vars);
    std::vector<std::vector<uint32_t>> adj(nlits);
    for (auto [a, b] : clauses) {
        adj[a ^ 1u].push_back(b);
        adj[b ^ 1u].push_back(a);
    }

    constexpr uint32_t kUnset = UINT32_MAX;
    std::vector<uint32_t> index(nlits, kUnset), low(nlits, 0), comp(nlits, kUnset);
    std::vector<bool> on_stack(nlits, false);
    std::vector<uint32_t> stack;
    uint32_t counter = 0, ncomp = 0;

    struct Frame {
        uint32_t v;
        size_t child;
    };
    std::vector<Frame> frames;

    for (uint32_t root = 0; root < nlits; ++root) {
        if (index[root] != kUnset) continue;
        frames.push_back({root, 0});
        while (!frames.empty()) {
            auto& [v, child] = frames.back();
            if (child == 0) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            if (child < adj[v].size()) {
                uint32_t w = adj[v][child++];
                if (index[w] == kUnset) {
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    while (true) {
                        uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if (w == v) break;
                    }
                    ++ncomp;
                }
                uint32_t vv = v;
                frames.pop_back();
                if (!frames.empty()) {
                    uint32_t parent = frames.back().v;
                    low[parent] = std::min(low[parent], low[vv]);
                }
            }
        }
    }

    std::vector<bool> assign(num_vars);
    for (int64_t v = 0; v < num_vars; ++v) {
        uint32_t p = static_cast<uint32_t>(2 * v);
        if (comp[p] == comp[p + 1]) return std::nullopt;
        // Tarjan numbers components in reverse topological order, so the
        // literal whose component is closer to a sink is the one to satisfy
        assign[v] = comp[p] < comp[p + 1];
    }
    return assign;
}

std::optional<std::vector<bool>> solve_2sat(const SatInstance& inst) {
    return solve_2sat(inst.num_vars(), inst.clauses);
}

std::vector<int64_t> extract_order(const UnionNfa& u, const std::vector<bool>& assignment) {
    SatInstance shape;
    shape.na = u.n0 - 1;
    shape.nb = u.n1 - 1;
    if (static_cast<int64_t>(assignment.size()) != shape.num_vars())
        throw std::invalid_argument("extract_order: assignment size mismatch");

    std::vector<int64_t> order;
    order.push_back(u.nfa.source);
    int64_t i = 1, j = 1;
    while (i <= shape.na || j <= shape.nb) {
        bool take_a;
        if (i > shape.na) take_a = false;
        else if (j > shape.nb) take_a = true;
        else take_a = assignment[shape.var(i, j)];
        if (take_a) {
            order.push_back(u.node_of(0, i + 1));
            ++i;
        } else {
            order.push_back(u.node_of(1, j + 1));
            ++j;
        }
    }
    return order;
}

}  // namespace wgm
