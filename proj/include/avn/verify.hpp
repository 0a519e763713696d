#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "avn/graphstate.hpp"
#include "avn/subgroup.hpp"
#include "avn/triples.hpp"

namespace avn {

// Random generators for the self-check suite and the tests. Maximal groups
// are random graph-state groups conjugated by random local Clifford frames,
// which stays inside the valid-group invariants by construction.

Graph random_graph(std::mt19937_64& rng, uint32_t n);
LocalCliffordFrame random_frame(std::mt19937_64& rng, uint32_t n);
StabiliserGroup random_maximal_group(std::mt19937_64& rng, uint32_t n);
/// Random valid group of random rank k in [0, n].
StabiliserGroup random_group(std::mt19937_64& rng, uint32_t n);
/// Rejection-sampled valid AvN triple with random +/-1 phases, n >= 3.
AvnTriple random_valid_triple(std::mt19937_64& rng, uint32_t n);
/// Random triple satisfying column condition 1, arbitrary parities.
AvnTriple random_condition1_triple(std::mt19937_64& rng, uint32_t n);

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// The cross-module invariant suite behind the `verify` subcommand:
/// definition equivalence, the triple-theorem equivalence on maximal groups,
/// certificate soundness, LC preservation, Galois laws and model checks.
std::vector<PropertyResult> run_verification_suite(uint64_t seed);

}  // namespace avn
