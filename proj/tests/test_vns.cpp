#include "doctest.h"

#include <limits>

#include "ksrd/greedy.hpp"
#include "ksrd/oracle.hpp"
#include "ksrd/vns.hpp"
#include "test_support.hpp"

using namespace ksrd;

namespace {
const VerifyOptions deterministic_opt{std::numeric_limits<int>::max(), 1};
}

TEST_CASE("fitness ordering is lexicographic") {
    CHECK(Fitness{0, 12} < Fitness{1, 9});
    CHECK(Fitness{1, 9} < Fitness{1, 10});
    CHECK(Fitness{2, 3} == Fitness{2, 3});
    // strict weak order: irreflexive, asymmetric, transitive on a sample
    std::vector<Fitness> sample{{0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 2}};
    for (const auto& a : sample) {
        CHECK(!(a < a));
        for (const auto& b : sample) {
            if (a < b) CHECK(!(b < a));
            for (const auto& c : sample)
                if (a < b && b < c) CHECK(a < c);
        }
    }
}

TEST_CASE("shake drops the weight by one when unconstrained") {
    SplitMix64 rng(5);
    Solution s({2, 3, 4, 1});
    auto result = shake(s, 2, 5, rng);
    CHECK(result.increments == 2);
    CHECK(result.decrements == 3);
    CHECK(result.solution.weight == s.weight - 1);
}

TEST_CASE("shake exhaustion paths") {
    SUBCASE("all-zero solution") {
        SplitMix64 rng(6);
        Solution s(std::vector<int>(4, 0));
        auto result = shake(s, 1, 3, rng);
        CHECK(result.increments == 1);
        CHECK(result.decrements == 1); // only the fresh unit can be removed
        CHECK(result.solution.weight == 0);
    }
    SUBCASE("saturated labels skip the increments") {
        SplitMix64 rng(7);
        Solution s({3, 3, 3});
        auto result = shake(s, 1, 3, rng);
        CHECK(result.increments == 0);
        CHECK(result.decrements == 2);
        CHECK(result.solution.weight == s.weight - 2);
    }
}

TEST_CASE("shake weight delta always equals increments minus decrements") {
    SplitMix64 rng(2025);
    for (int trial = 0; trial < 2000; ++trial) {
        int n = 1 + rng.next_index(10);
        int cap = 1 + rng.next_index(5);
        std::vector<int> labels(n);
        for (auto& l : labels) l = rng.next_index(cap + 1);
        Solution s(labels);
        int r = 1 + rng.next_index(4);
        auto result = shake(s, r, cap, rng);
        CHECK(result.solution.weight - s.weight == result.increments - result.decrements);
        if (result.increments == r && result.decrements == r + 1)
            CHECK(result.solution.weight == s.weight - 1);
        for (int v = 0; v < n; ++v) {
            CHECK(result.solution.labels[v] >= 0);
            CHECK(result.solution.labels[v] <= cap);
        }
    }
}

TEST_CASE("two_decompositions") {
    CHECK(two_decompositions(2, 3, 5) ==
          std::vector<std::pair<int, int>>{{0, 5}, {1, 4}, {3, 2}, {4, 1}, {5, 0}});
    CHECK(two_decompositions(0, 0, 4).empty());
    CHECK(two_decompositions(3, 3, 4) ==
          std::vector<std::pair<int, int>>{{2, 4}, {4, 2}});
}

TEST_CASE("incremental recheck equals a full recount") {
    Graph g = ksrd_test::fig1();
    auto attacks = generate_attacks(g, 3, 1000).intense;
    Solution base({0, 0, 3, 0, 1});
    auto prev = quasi_infeasibility(g, base, attacks, deterministic_opt, {11, 0});
    REQUIRE(prev.non_defended_count == 1);

    SUBCASE("unchanged solution returns the previous count") {
        int c = incremental_recheck(g, prev.coverage, base, base, 0, 4, attacks,
                                    deterministic_opt, 11);
        CHECK(c == 1);
    }
    SUBCASE("raise-only candidates recheck just the failures") {
        Solution cand = base;
        cand.set_label(0, 1);
        cand.set_label(4, 2);
        int c = incremental_recheck(g, prev.coverage, base, cand, 0, 4, attacks,
                                    deterministic_opt, 11);
        auto full = quasi_infeasibility(g, cand, attacks, deterministic_opt,
                                        {11, prev.coverage.epoch});
        CHECK(c == full.non_defended_count);
        CHECK(c == 0); // raising 0->1 fixes the one failing attack
    }
    SUBCASE("mixed raise and drop") {
        Solution cand = base;
        cand.set_label(0, 1);
        cand.set_label(4, 0);
        int c = incremental_recheck(g, prev.coverage, base, cand, 0, 4, attacks,
                                    deterministic_opt, 11);
        auto full = quasi_infeasibility(g, cand, attacks, deterministic_opt,
                                        {11, prev.coverage.epoch});
        CHECK(c == full.non_defended_count);
        CHECK(c == 6); // every attack containing node 4 now fails
    }
}

TEST_CASE("incremental recheck equivalence on random candidates") {
    SplitMix64 rng(808);
    int probes = 0;
    while (probes < 300) {
        int n = 4 + rng.next_index(12);
        Graph g = ksrd_test::random_graph(n, 0.35, rng);
        int k = 2 + rng.next_index(2);
        if (n < k) continue;
        auto sets = generate_attacks(g, k, 200);
        const auto& attacks = sets.lightweight;
        if (attacks.empty()) continue;
        const int cap = label_cap(g, k);
        std::uint64_t seed = rng.next();
        Solution s = ksrd_test::random_solution(g, k, rng);
        auto prev = quasi_infeasibility(g, s, attacks, deterministic_opt, {seed, 3});
        for (int move = 0; move < 6; ++move) {
            int i = rng.next_index(n), j = rng.next_index(n);
            if (i == j) continue;
            Solution cand = s;
            cand.set_label(i, rng.next_index(cap + 1));
            cand.set_label(j, rng.next_index(cap + 1));
            int inc = incremental_recheck(g, prev.coverage, s, cand, i, j, attacks,
                                          deterministic_opt, seed);
            auto full = quasi_infeasibility(g, cand, attacks, deterministic_opt,
                                            {seed, prev.coverage.epoch});
            CHECK(inc == full.non_defended_count);
            ++probes;
        }
    }
}

TEST_CASE("local_search leaves a quasi-feasible solution untouched") {
    Graph g = ksrd_test::fig1();
    auto attacks = generate_attacks(g, 3, 1000).intense;
    Solution s({1, 0, 2, 1, 1});
    VerifyEpochs epochs{21, 0};
    SplitMix64 rng(21);
    auto result = local_search(g, 3, s, attacks, deterministic_opt, epochs, rng);
    CHECK(result.solution == s);
    CHECK(result.fitness == Fitness{0, 5});
}

TEST_CASE("local_search preserves the weight and never worsens the count") {
    SplitMix64 rng(1717);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 3 + rng.next_index(8);
        Graph g = ksrd_test::random_graph(n, 0.4, rng);
        int k = 2 + rng.next_index(2);
        if (n < k) continue;
        auto sets = generate_attacks(g, k, 100000);
        Solution s = ksrd_test::random_solution(g, k, rng);
        std::uint64_t seed = rng.next();
        VerifyEpochs epochs{seed, 0};
        SplitMix64 search_rng(seed);
        auto before =
            quasi_infeasibility(g, s, sets.lightweight, deterministic_opt, {seed, 1000});
        auto result = local_search(g, k, s, sets.lightweight, deterministic_opt, epochs,
                                   search_rng);
        CHECK(result.solution.weight == s.weight);
        CHECK(result.fitness.infeasibility <= before.non_defended_count);
        auto audit = quasi_infeasibility(g, result.solution, sets.lightweight,
                                         deterministic_opt, {seed, 2000});
        CHECK(audit.non_defended_count == result.fitness.infeasibility);
    }
}

TEST_CASE("local_search fixes a one-swap-reparable labeling") {
    // [2,0,3,0,0] fails every attack containing node 4; moving one army from
    // node 0 to node 4 gives the feasible [1,0,3,0,1] at the same weight.
    Graph g = ksrd_test::fig1();
    auto attacks = generate_attacks(g, 3, 1000).intense;
    Solution s({2, 0, 3, 0, 0});
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        VerifyEpochs epochs{seed, 0};
        SplitMix64 rng(seed);
        auto result = local_search(g, 3, s, attacks, deterministic_opt, epochs, rng);
        CHECK(result.fitness.infeasibility == 0);
        CHECK(result.solution.weight == 5);
        CHECK(exact_feasible(g, result.solution, 3));
    }
}

TEST_CASE("local_search returns the input when no candidate improves") {
    // weight 4 < gamma = 5, so no 2-decomposition can reach feasibility and
    // the baseline count of 1 cannot decrease (verified by brute force over
    // all candidates in the defense tests' oracle style)
    Graph g = ksrd_test::fig1();
    auto attacks = generate_attacks(g, 3, 1000).intense;
    Solution s({0, 0, 3, 0, 1});
    const int cap = label_cap(g, 3);
    // confirm by exhaustive candidate sweep that 1 is a local minimum
    int best_candidate = 100;
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            for (auto [x, y] : two_decompositions(s.labels[i], s.labels[j], cap)) {
                Solution cand = s;
                cand.set_label(i, x);
                cand.set_label(j, y);
                auto q = quasi_infeasibility(g, cand, attacks, deterministic_opt, {0, 0});
                best_candidate = std::min(best_candidate, q.non_defended_count);
            }
        }
    }
    REQUIRE(best_candidate >= 1);
    VerifyEpochs epochs{9, 0};
    SplitMix64 rng(9);
    auto result = local_search(g, 3, s, attacks, deterministic_opt, epochs, rng);
    CHECK(result.solution == s);
    CHECK(result.fitness == Fitness{1, 4});
}

TEST_CASE("vns_solve reaches the optimum on the worked example") {
    Graph g = ksrd_test::fig1();
    for (std::uint64_t seed : {1ULL, 7ULL, 123ULL}) {
        SolverConfig cfg;
        cfg.k = 3;
        cfg.seed = seed;
        cfg.iter_max = 300;
        cfg.t_max_s = 30.0;
        RunReport report = vns_solve(g, cfg);
        CHECK(report.fitness.weight == 5);
        CHECK(report.fitness.infeasibility == 0);
        CHECK(report.exact_mode);
        CHECK(exact_feasible(g, report.best, 3));
    }
}

TEST_CASE("vns_solve on K2 with k=2") {
    Graph g = Graph::from_edges(2, {{0, 1}});
    SolverConfig cfg;
    cfg.k = 2;
    cfg.iter_max = 50;
    RunReport report = vns_solve(g, cfg);
    CHECK(report.fitness.weight == 2);
}

TEST_CASE("vns_solve with iter_max 0 returns the greedy start") {
    Graph g = ksrd_test::fig1();
    SolverConfig cfg;
    cfg.k = 3;
    cfg.iter_max = 0;
    RunReport report = vns_solve(g, cfg);
    CHECK(report.iterations == 0);
    CHECK(report.best == greedy(g, 3));
    CHECK(report.fitness == Fitness{0, 5});
}

TEST_CASE("vns_solve is deterministic per seed") {
    SplitMix64 gen_rng(6);
    Graph g = ksrd_test::random_graph(10, 0.3, gen_rng);
    SolverConfig cfg;
    cfg.k = 2;
    cfg.iter_max = 120;
    cfg.seed = 99;
    RunReport a = vns_solve(g, cfg);
    RunReport b = vns_solve(g, cfg);
    CHECK(a.best == b.best);
    CHECK(a.fitness == b.fitness);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("vns_solve rejects bad configs") {
    Graph g = ksrd_test::fig1();
    SolverConfig cfg;
    cfg.k = 9;
    CHECK_THROWS_AS(vns_solve(g, cfg), std::invalid_argument);
    cfg.k = 2;
    cfg.r_min = 5;
    cfg.r_max = 2;
    CHECK_THROWS_AS(vns_solve(g, cfg), std::invalid_argument);
}
