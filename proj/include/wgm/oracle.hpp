#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wgm/boss.hpp"
#include "wgm/wheeler.hpp"

// Brute-force reference implementations. Everything here is definitional:
// materialize, sort, enumerate. Nothing below calls into the optimized merge
// or refinement code paths.
namespace wgm::oracle {

// caps keeping the exhaustive procedures tractable
struct Limits {
    static constexpr int64_t kMaxCorderNodes = 12;
    static constexpr int kMaxWordLen = 12;
};

// BOSS arrays straight from the definitions: list the k-mers of the padded
// strings, sort their reverses, emit W / wminus / last per node.
BossGraph naive_boss(const std::vector<std::string>& collection, uint32_t k, uint32_t sigma);

// Union graph recomputed from scratch: pull both k-mer/edge sets out via
// node_kmer and rebuild.
BossGraph naive_merge(const BossGraph& g0, const BossGraph& g1);

// Recolored matrix for the union graph: every output row is recomputed from
// the input graphs' k-mer -> row maps.
struct ColoredUnion {
    BossGraph graph;
    std::vector<std::vector<bool>> rows;   // cols = c0 + c1
};
ColoredUnion naive_merge_colored(const BossGraph& g0, const BossGraph& g1,
                                 const std::vector<std::vector<bool>>& rows0,
                                 const std::vector<std::vector<bool>>& rows1);

// All words of length <= maxlen accepted by the NFA (symbol-value strings;
// includes the empty word when the source is final).
std::set<std::string> enumerate_language(const Nfa& a, int maxlen);

// First interleaving of the two origin-ordered node lists (source fixed
// first) that passes validate_wheeler, or nullopt when none does.
std::optional<std::vector<int64_t>> exhaustive_corder(const UnionNfa& u);

// Longest-common-suffix lengths between consecutive entries of a sorted
// k-mer list (n-1 values).
std::vector<uint32_t> brute_lcs(const std::vector<std::string>& kmers);

// Sorted k-mers of every node, via node_kmer.
std::vector<std::string> all_kmers(const BossGraph& g);

}  // namespace wgm::oracle
