#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ksrd/graph.hpp"

namespace ksrd {

/// A set of k distinct nodes under simultaneous attack, strictly increasing.
using Attack = std::vector<int>;

struct AttackSets {
    std::vector<Attack> intense;
    std::vector<Attack> lightweight;
    // True iff intense covers every one of the C(n,k) possible attacks, in
    // which case quasi-feasibility against intense is exact feasibility.
    bool exhaustive = false;
};

/// C(n,k) if it fits in 64 bits, nullopt on overflow.
std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k);

/// All C(|s|,k) sorted k-subsets of a sorted node set, lexicographic order.
/// Empty result when |s| < k.
std::vector<Attack> k_combinations(const std::vector<int>& sorted_set, int k);

/// Builds the predefined attack sets.
/// If C(n,k) < bound, both sets are the full enumeration. Otherwise intense
/// is the deduplicated union of comb(ball(v, ball_radius), k) over all v;
/// lightweight equals intense when |intense| <= bound and falls back to the
/// union over closed neighborhoods otherwise.
AttackSets generate_attacks(const Graph& g, int k, std::uint64_t bound,
                            int ball_radius = 3);

} // namespace ksrd
