#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ksrd/attacks.hpp"
#include "ksrd/graph.hpp"
#include "ksrd/rng.hpp"
#include "ksrd/solution.hpp"

namespace ksrd {

/// Verdict for a single attack, with the witness assignment when defended:
/// attacked nodes with a positive label defend themselves, every attacked
/// 0-node is covered by exactly one neighbor, and a defender u covers at
/// most labels[u] - 1 of them.
struct DefenseOutcome {
    bool defended = false;
    std::vector<int> self_defenders;
    std::vector<std::pair<int, int>> covered; // (attacked 0-node, defender)
};

/// One defense record: the node lent `lent` armies to attacked 0-nodes in
/// attack `attack` (0 for pure self-defense). The witnessed assignment stays
/// valid as long as the node keeps lent + 1 armies.
struct CoverageEntry {
    int attack = 0;
    int lent = 0;

    bool operator==(const CoverageEntry&) const = default;
};

/// Per-node record of which attacks the node defended (self-defense
/// included) in one full verification pass, plus the failures of that pass.
/// `epoch` identifies the pass so that rechecks replay the same per-attack
/// random streams.
struct CoverageInfo {
    std::uint64_t epoch = 0;
    std::vector<std::vector<CoverageEntry>> defended_by; // per node, sorted by attack
    std::vector<int> non_defended;                       // sorted attack indices
};

struct QuasiResult {
    int non_defended_count = 0;
    CoverageInfo coverage;
};

struct VerifyOptions {
    int cutoff = 100;
    int tries = 10;
};

/// Derives one independent random stream per attack index. Keeping the
/// stream a pure function of (run seed, attack index, epoch) lets a partial
/// recheck reproduce exactly what a full pass of the same epoch would do.
struct AttackStreams {
    std::uint64_t run_seed = 0;
    std::uint64_t epoch = 0;

    SplitMix64 stream(std::size_t attack_index) const {
        return SplitMix64(mix_seed(run_seed, attack_index, epoch));
    }
};

/// Neighbors of v able to lend an army: all u in adj(v) with labels[u] >= 2.
std::vector<int> alternatives_for(const Graph& g, const Solution& s, int v);

/// Full enumeration of defender assignments (odometer over the Cartesian
/// product of per-node alternatives). Complete: defended iff some assignment
/// respects every capacity. alternatives[i] holds the non-empty candidate
/// list of reduced_attack[i]; entries beyond reduced_attack.size() are
/// ignored.
DefenseOutcome deterministic_defense(const Solution& s,
                                     const std::vector<int>& reduced_attack,
                                     const std::vector<std::vector<int>>& alternatives,
                                     const std::vector<int>& self_defenders);

/// Up to `tries` randomized passes; in each pass every reduced node draws a
/// defender with probability proportional to its free armies. One-sided:
/// may miss an existing defense, never invents one.
DefenseOutcome roulette_defense(const Graph& g, const Solution& s,
                                const std::vector<int>& reduced_attack,
                                const std::vector<int>& self_defenders,
                                int tries, SplitMix64& rng);

/// Heuristic per-attack decision: self-defenders are set aside, a node with
/// no alternatives fails immediately, and the remaining assignment problem
/// goes to deterministic_defense when the alternative product is below
/// cutoff, to roulette_defense otherwise.
DefenseOutcome is_attack_defended(const Graph& g, const Solution& s,
                                  const Attack& attack, int cutoff, int tries,
                                  SplitMix64& rng);

/// Exact decision via capacity-constrained bipartite matching between
/// attacked 0-nodes and their lending neighbors.
DefenseOutcome defend_exact(const Graph& g, const Solution& s, const Attack& attack);

/// Runs is_attack_defended over the list, counting failures and recording
/// the defenders of every success into a CoverageInfo for later rechecks.
QuasiResult quasi_infeasibility(const Graph& g, const Solution& s,
                                const std::vector<Attack>& attacks,
                                const VerifyOptions& opt,
                                const AttackStreams& streams);

namespace detail {

// Reusable buffers for the hot verification loop. After a defended
// check_attack, reduced/assign/self_defenders hold the witness.
struct DefenseScratch {
    std::vector<int> reduced;
    std::vector<std::vector<int>> alternatives;
    std::vector<int> self_defenders;
    std::vector<int> assign;                 // defender per reduced slot
    std::vector<std::pair<int, int>> uses;   // per-assignment commitments
    std::vector<int> odometer;
    std::vector<int> mark;                   // versioned node stamps
    int mark_version = 0;
};

bool check_attack(const Graph& g, const Solution& s, const Attack& attack,
                  const VerifyOptions& opt, SplitMix64& rng,
                  DefenseScratch& scratch, DefenseOutcome* out);

} // namespace detail

} // namespace ksrd
