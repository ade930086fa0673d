#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "wgm/wheeler.hpp"

namespace wgm {

// 2-SAT instance over the cross-pair variables x_{i,j} <=> (u_i < v_j), where
// u_i / v_j range over the non-source nodes of the two input automata in
// their Wheeler orders. Literals are encoded as 2*var (positive) and
// 2*var + 1 (negated); clauses are disjunctions of two literals.
struct SatInstance {
    int64_t na = 0;   // non-source nodes of A0
    int64_t nb = 0;   // non-source nodes of A1
    std::vector<std::pair<uint32_t, uint32_t>> clauses;

    // clause census, used to cross-check the closed-form counts
    uint64_t transitivity_clauses = 0;
    uint64_t label_unit_clauses = 0;
    uint64_t edge_pair_clauses = 0;
    uint64_t source_unit_clauses = 0;

    int64_t num_vars() const { return na * nb; }
    uint32_t var(int64_t i, int64_t j) const {   // i in 1..na, j in 1..nb
        return static_cast<uint32_t>((i - 1) * nb + (j - 1));
    }
    static uint32_t pos(uint32_t v) { return 2 * v; }
    static uint32_t neg(uint32_t v) { return 2 * v + 1; }

    void add_clause(uint32_t l1, uint32_t l2) { clauses.emplace_back(l1, l2); }
    void add_implication(uint32_t from, uint32_t to) { add_clause(from ^ 1u, to); }
    void add_unit(uint32_t l) { add_clause(l, l); }

    void write_dimacs(std::ostream& out) const;
};

// Builds the clause set for the union automaton: transitivity implications,
// unit clauses for cross pairs with different incoming labels, and the
// implications for every cross pair of equal-labeled edges. Edges leaving the
// fused source contribute unit clauses, since the source precedes every node
// in any valid order.
SatInstance build_instance(const UnionNfa& u);

// Implication-graph SCC solver; nullopt means unsatisfiable.
std::optional<std::vector<bool>> solve_2sat(const SatInstance& inst);

// Generic solver entry point for raw clause lists (used by the solver tests).
std::optional<std::vector<bool>> solve_2sat(int64_t num_vars,
                                            const std::vector<std::pair<uint32_t, uint32_t>>& clauses);

// Merges the two ordered node lists according to a satisfying assignment;
// returns the node ids of the union automaton in rank order (source first).
std::vector<int64_t> extract_order(const UnionNfa& u, const std::vector<bool>& assignment);

}  // namespace wgm
