#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "ksrd/attacks.hpp"
#include "ksrd/defense.hpp"
#include "ksrd/graph.hpp"
#include "ksrd/rng.hpp"
#include "ksrd/solution.hpp"

namespace ksrd {

/// Lexicographic (non-defended attack count, label sum).
struct Fitness {
    int infeasibility = 0;
    int weight = 0;

    auto operator<=>(const Fitness&) const = default;
};

struct SolverConfig {
    int k = 2;
    int r_min = 1;
    int r_max = 10;
    double move_prob = 0.5;
    int cutoff = 100;
    int tries = 10;
    std::uint64_t comb_take_all_bound = 50'000;
    int ball_radius = 3;
    double t_max_s = 300.0;
    std::uint64_t iter_max = 5000;
    std::uint64_t seed = 1;
};

struct RunReport {
    Solution best;
    Fitness fitness;
    std::uint64_t iterations = 0;
    double time_to_best_s = 0.0;
    double total_time_s = 0.0;
    bool exact_mode = false; // attack set was exhaustive
    std::uint64_t seed = 0;
};

struct ShakeResult {
    Solution solution;
    int increments = 0;
    int decrements = 0;
};

using Clock = std::chrono::steady_clock;
constexpr Clock::time_point no_deadline = Clock::time_point::max();

/// r uniform increments over nodes below the cap, then r+1 decrements chosen
/// by roulette over the current labels. Steps with no eligible node are
/// skipped, so the weight delta is increments - decrements (-1 when nothing
/// is exhausted).
ShakeResult shake(const Solution& s, int r, int cap, SplitMix64& rng);

/// All (x, y) with x + y == a + b, 0 <= x,y <= cap, except (a, b) itself,
/// in increasing x.
std::vector<std::pair<int, int>> two_decompositions(int a, int b, int cap);

/// Candidate count for s_cand given the coverage of a full pass over s_base,
/// where the two differ exactly at nodes i and j. Re-verifies only the
/// previously failing attacks and, for a lowered label, the attacks that
/// node defended; everything else stays defended by monotonicity. Rechecked
/// attacks replay the stream of prev's epoch. Counting stops once it
/// reaches `limit`.
int incremental_recheck(const Graph& g, const CoverageInfo& prev,
                        const Solution& s_base, const Solution& s_cand,
                        int i, int j, const std::vector<Attack>& attacks,
                        const VerifyOptions& opt, std::uint64_t run_seed,
                        int limit = std::numeric_limits<int>::max());

/// Epoch source shared by all full verifications of one run.
struct VerifyEpochs {
    std::uint64_t run_seed = 0;
    std::uint64_t next_epoch = 0;

    AttackStreams next() { return AttackStreams{run_seed, next_epoch++}; }
};

struct LocalSearchResult {
    Solution solution;
    Fitness fitness;
};

/// First-improvement quasi-swap search over all node pairs and their
/// 2-decompositions, driven by incremental rechecks against the lightweight
/// attacks. Returns as soon as the count reaches zero; otherwise runs until
/// a full pass brings no improvement or the deadline passes.
LocalSearchResult local_search(const Graph& g, int k, Solution s,
                               const std::vector<Attack>& lightweight,
                               const VerifyOptions& opt, VerifyEpochs& epochs,
                               SplitMix64& search_rng,
                               Clock::time_point deadline = no_deadline);

using ProgressFn =
    std::function<void(std::uint64_t iter, Fitness incumbent, double elapsed_s)>;

/// Full variable neighborhood search run: greedy start, shake/local-search
/// sweeps over r in [r_min, r_max], acceptance re-verified against the
/// intense attacks. Single-threaded and deterministic per seed.
RunReport vns_solve(const Graph& g, const SolverConfig& cfg,
                    const ProgressFn& progress = {});

} // namespace ksrd
