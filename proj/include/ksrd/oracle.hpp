#pragma once

#include <cstdint>
#include <optional>

#include "ksrd/attacks.hpp"
#include "ksrd/graph.hpp"
#include "ksrd/solution.hpp"

namespace ksrd {

struct OracleBudget {
    std::uint64_t max_attacks = 10'000'000;    // refuse if C(n,k) exceeds this
    std::uint64_t max_labelings = 100'000'000; // search frontier guard
};

/// First attack (lexicographic) not exactly defendable under s, if any.
/// Throws std::runtime_error when C(n,k) exceeds the budget.
std::optional<Attack> first_undefended_attack(const Graph& g, const Solution& s,
                                              int k, const OracleBudget& budget = {});

/// True iff every one of the C(n,k) attacks is exactly defendable.
bool exact_feasible(const Graph& g, const Solution& s, int k,
                    const OracleBudget& budget = {});

/// Number of attacks among all C(n,k) that are not exactly defendable.
std::uint64_t count_undefended_attacks(const Graph& g, const Solution& s, int k,
                                       const OracleBudget& budget = {});

struct OptimumResult {
    int gamma = 0;
    Solution witness;
};

/// Exhaustive optimum by iterative deepening on the total weight: labelings
/// of weight 0, 1, 2, ... are enumerated within the codomain cap and the
/// first exactly feasible one is returned. Desk-scale only; throws when the
/// budget is exceeded.
OptimumResult brute_force_optimum(const Graph& g, int k,
                                  const OracleBudget& budget = {});

} // namespace ksrd
