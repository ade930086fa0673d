#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wgm/wheeler.hpp"

// Random test-input generators shared by the test suites and the `verify`
// subcommand. Deterministic for a fixed seed.
namespace wgm::testgen {

using Rng = std::mt19937_64;

// Random string collection over symbols 1..sigma.
std::vector<std::string> random_collection(Rng& rng, uint32_t sigma, size_t max_strings,
                                           size_t max_len);

// Random Wheeler automaton with node ids in Wheeler-rank order (source = 0),
// every node reachable from the source, every node co-reachable to a final.
// max_n counts all nodes, source included.
Nfa random_wheeler_automaton(Rng& rng, uint32_t sigma, int64_t max_n);

// Random 2-SAT clause list.
std::vector<std::pair<uint32_t, uint32_t>> random_2sat(Rng& rng, int64_t num_vars,
                                                       size_t num_clauses);

}  // namespace wgm::testgen
