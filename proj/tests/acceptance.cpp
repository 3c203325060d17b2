// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "ksrd/attacks.hpp"
#include "ksrd/defense.hpp"
#include "ksrd/graph.hpp"
#include "ksrd/greedy.hpp"
#include "ksrd/instances.hpp"
#include "ksrd/oracle.hpp"
#include "ksrd/rng.hpp"
#include "ksrd/solution.hpp"
#include "ksrd/vns.hpp"

#ifndef KSRD_CLI_PATH
#define KSRD_CLI_PATH "ksrd"
#endif
#ifndef KSRD_INSTANCE_DIR
#define KSRD_INSTANCE_DIR "instances"
#endif

using namespace ksrd;

namespace {

using Seconds = std::chrono::duration<double>;

struct Check {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

double elapsed_since(Clock::time_point t0) {
    return Seconds(Clock::now() - t0).count();
}

Graph fig1() {
    return Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {1, 4}});
}

Graph random_graph(int n, double edge_prob, SplitMix64& rng) {
    std::vector<Graph::Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_double() < edge_prob) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

Solution random_solution(const Graph& g, int k, SplitMix64& rng) {
    const int cap = label_cap(g, k);
    std::vector<int> labels(g.n());
    for (auto& l : labels) l = rng.next_index(cap + 1);
    return Solution(std::move(labels));
}

std::vector<std::string> corpus_files() {
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(KSRD_INSTANCE_DIR))
        if (entry.path().extension() == ".edges") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    return files;
}

std::pair<int, std::string> run_cli(const std::string& args) {
    std::string cmd = std::string(KSRD_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    return {WEXITSTATUS(pclose(pipe)), out};
}

// ---- criteria ----

Check figure_ground_truth() {
    Check c;
    auto t0 = Clock::now();
    Graph g = fig1();
    c.require(brute_force_optimum(g, 3).gamma == 5, "gamma != 5");
    c.require(exact_feasible(g, Solution({1, 0, 2, 1, 1}), 3),
              "[1,0,2,1,1] rejected");
    Solution bad({0, 0, 3, 0, 1});
    c.require(!exact_feasible(g, bad, 3), "[0,0,3,0,1] accepted");
    auto first = first_undefended_attack(g, bad, 3);
    c.require(first && *first == Attack{0, 1, 3}, "failing attack is not {A,B,D}");
    c.require(elapsed_since(t0) < 1.0, "needed >= 1 s");
    return c;
}

Check oracle_equivalence() {
    Check c;
    auto t0 = Clock::now();
    SplitMix64 rng(0xACCE97);
    long long pairs_checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + rng.next_index(5); // 2..6
        Graph g = random_graph(n, 0.45, rng);
        for (int rep = 0; rep < 50; ++rep) {
            Solution s = random_solution(g, 2, rng);
            for (int k = 2; k <= 3; ++k) {
                if (n < k) continue;
                for (const auto& attack : generate_attacks(g, k, UINT64_MAX).intense) {
                    bool exact = defend_exact(g, s, attack).defended;

                    std::vector<int> reduced, selfd;
                    std::vector<std::vector<int>> alts;
                    bool hopeless = false;
                    for (int v : attack) {
                        if (s.labels[v] > 0) {
                            selfd.push_back(v);
                            continue;
                        }
                        auto a = alternatives_for(g, s, v);
                        if (a.empty()) {
                            hopeless = true;
                            break;
                        }
                        reduced.push_back(v);
                        alts.push_back(std::move(a));
                    }
                    if (hopeless) {
                        c.require(!exact, "exact defends a node with no alternatives");
                    } else {
                        bool det =
                            deterministic_defense(s, reduced, alts, selfd).defended;
                        c.require(det == exact, "deterministic != exact");
                        SplitMix64 roulette_rng(rng.next());
                        bool heur =
                            is_attack_defended(g, s, attack, 1, 10, roulette_rng)
                                .defended;
                        c.require(!heur || exact, "roulette defended an impossible attack");
                    }
                    ++pairs_checked;
                    if (!c.pass) return c;
                }
            }
        }
    }
    c.require(pairs_checked > 100000, "too few pairs checked");
    double secs = elapsed_since(t0);
    c.require(secs < 60.0, "needed >= 60 s");
    c.detail = std::to_string(pairs_checked) + " pairs in " + std::to_string(secs) + "s";
    return c;
}

Check vns_desk_scale_optimality() {
    // paper repo instance files are not shipped: substitute branch
    Check c;
    int graphs_done = 0;
    for (int n : {6, 7, 8, 9, 10}) {
        for (double radius : {0.35, 0.45, 0.55, 0.75}) {
            Graph g = gen_unit_disc(
                {n, radius, static_cast<std::uint64_t>(n * 100 + int(radius * 100))});
            ++graphs_done;
            for (int k = 2; k <= 3; ++k) {
                int gamma = brute_force_optimum(g, k).gamma;
                for (std::uint64_t seed = 1; seed <= 10; ++seed) {
                    SolverConfig cfg;
                    cfg.k = k;
                    cfg.seed = seed;
                    cfg.iter_max = 1500;
                    cfg.t_max_s = 10.0;
                    RunReport report = vns_solve(g, cfg);
                    if (report.fitness.weight != gamma ||
                        report.fitness.infeasibility != 0) {
                        c.require(false,
                                  "n=" + std::to_string(n) + " R=" + std::to_string(radius) +
                                      " k=" + std::to_string(k) + " seed=" +
                                      std::to_string(seed) + ": got " +
                                      std::to_string(report.fitness.weight) +
                                      " vs gamma=" + std::to_string(gamma));
                        return c;
                    }
                }
            }
        }
    }
    c.detail = std::to_string(graphs_done) + " graphs x {k=2,3} x 10 seeds";
    return c;
}

Check greedy_feasibility_and_dominance() {
    Check c;
    auto t0 = Clock::now();
    for (const auto& path : corpus_files()) {
        Graph g = load_edge_list_file(path);
        if (g.n() > 30) continue;
        for (int k = 2; k <= 3; ++k) {
            Solution start = greedy(g, k);
            c.require(exact_feasible(g, start, k), path + ": greedy infeasible");
            c.require(start.weight <= g.n(), path + ": greedy weight above n");
            for (std::uint64_t seed : {1ULL, 2ULL}) {
                SolverConfig cfg;
                cfg.k = k;
                cfg.seed = seed;
                cfg.iter_max = 150;
                cfg.t_max_s = 8.0;
                RunReport report = vns_solve(g, cfg);
                c.require(report.fitness.weight <= start.weight,
                          path + ": VNS worse than greedy");
            }
            if (!c.pass) return c;
        }
    }
    double secs = elapsed_since(t0);
    c.require(secs < 600.0, "needed >= 10 min");
    c.detail = "corpus in " + std::to_string(secs) + "s";
    return c;
}

Check shake_contract() {
    Check c;
    SplitMix64 rng(0x5AEE);
    for (int trial = 0; trial < 10000; ++trial) {
        int n = 1 + rng.next_index(12);
        int cap = 1 + rng.next_index(5);
        std::vector<int> labels(n);
        for (auto& l : labels) l = rng.next_index(cap + 1);
        Solution s(labels);
        int r = 1 + rng.next_index(5);
        ShakeResult result = shake(s, r, cap, rng);
        int delta = result.solution.weight - s.weight;
        c.require(delta == result.increments - result.decrements,
                  "delta != increments - decrements");
        if (result.increments == r && result.decrements == r + 1)
            c.require(delta == -1, "unconstrained shake did not drop weight by 1");
        if (!c.pass) return c;
    }
    return c;
}

Check incremental_verification() {
    Check c;
    SplitMix64 rng(0x1ECF);
    const VerifyOptions opt{std::numeric_limits<int>::max(), 1}; // deterministic path
    int moves = 0;
    while (moves < 1000) {
        int n = 5 + rng.next_index(16); // 5..20
        Graph g = random_graph(n, 0.3, rng);
        int k = 2 + rng.next_index(2);
        if (n < k) continue;
        auto sets = generate_attacks(g, k, 400);
        const auto& attacks = sets.lightweight;
        if (attacks.empty()) continue;
        const int cap = label_cap(g, k);
        std::uint64_t seed = rng.next();
        Solution s = random_solution(g, k, rng);
        QuasiResult prev = quasi_infeasibility(g, s, attacks, opt, {seed, 17});
        for (int m = 0; m < 5 && moves < 1000; ++m) {
            int i = rng.next_index(n), j = rng.next_index(n);
            if (i == j) continue;
            auto decomp = two_decompositions(s.labels[i], s.labels[j], cap);
            if (decomp.empty()) continue;
            auto [x, y] = decomp[rng.next_index(static_cast<int>(decomp.size()))];
            Solution cand = s;
            cand.set_label(i, x);
            cand.set_label(j, y);
            int inc = incremental_recheck(g, prev.coverage, s, cand, i, j, attacks,
                                          opt, seed);
            QuasiResult full = quasi_infeasibility(g, cand, attacks, opt,
                                                   {seed, prev.coverage.epoch});
            c.require(inc == full.non_defended_count,
                      "mismatch: incremental " + std::to_string(inc) + " vs full " +
                          std::to_string(full.non_defended_count));
            if (!c.pass) return c;
            ++moves;
        }
    }
    c.detail = std::to_string(moves) + " candidate moves";
    return c;
}

Check two_decomposition_golden() {
    Check c;
    std::vector<std::pair<int, int>> expected{{0, 5}, {1, 4}, {3, 2}, {4, 1}, {5, 0}};
    c.require(two_decompositions(2, 3, 5) == expected, "cap=5 mismatch");
    c.require(two_decompositions(2, 3, 7) == expected, "cap=7 mismatch");
    return c;
}

Check determinism() {
    Check c;
    const std::string instance =
        std::string(KSRD_INSTANCE_DIR) + "/wireless_20_05_s1.edges";
    const std::string solve_args = "solve --instance " + instance +
                                   " --k 3 --seed 7 --runs 2 --max-iters 60 --omit-timing";
    auto a = run_cli(solve_args);
    auto b = run_cli(solve_args);
    c.require(a.first == 0 && b.first == 0, "solve failed");
    c.require(a.second == b.second, "solve records differ between executions");
    c.require(!a.second.empty(), "no records emitted");

    const std::string manifest = "/tmp/ksrd_acceptance_manifest.json";
    {
        std::ofstream out(manifest);
        out << R"([{"instance":")" << instance << R"(","k":2,"runs":2,"max_iters":60},
                   {"instance":")" << instance << R"(","k":3,"runs":2,"max_iters":60},
                   {"instance":")" << KSRD_INSTANCE_DIR
            << R"(/fig1.edges","k":3,"runs":1,"algo":"exact"}])";
    }
    auto one = run_cli("bench --manifest " + manifest + " --jobs 1 --omit-timing");
    auto four = run_cli("bench --manifest " + manifest + " --jobs 4 --omit-timing");
    std::remove(manifest.c_str());
    c.require(one.first == 0 && four.first == 0, "bench failed");
    c.require(one.second == four.second, "bench CSV differs across --jobs");
    return c;
}

Check scalability_smoke() {
    Check c;
    Graph g = gen_unit_disc({100, 0.4, 424242});
    Solution start = greedy(g, 3);
    SolverConfig cfg;
    cfg.k = 3;
    cfg.seed = 1;
    cfg.iter_max = 50;
    cfg.t_max_s = 120.0;
    RunReport report = vns_solve(g, cfg); // includes attack generation
    c.require(report.total_time_s < 120.0, "needed >= 120 s");
    c.require(report.fitness.weight <= start.weight, "VNS worse than greedy");
    // the sweep over r finishes even when it crosses iter_max, so >= 50
    c.require(report.iterations >= 50, "did not complete 50 iterations");
    std::ostringstream detail;
    detail << "n=100 R=0.4: obj " << report.fitness.weight << " vs greedy "
           << start.weight << " in " << report.total_time_s << "s";
    c.detail = detail.str();
    return c;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "figure ground truth (gamma=5, exact accept/reject)", figure_ground_truth},
        {2, "oracle equivalence (deterministic==exact, roulette one-sided)",
         oracle_equivalence},
        {3, "VNS desk-scale optimality (20 unit-disc graphs, 10/10 seeds)",
         vns_desk_scale_optimality},
        {4, "greedy feasibility and VNS dominance on the corpus",
         greedy_feasibility_and_dominance},
        {5, "shake weight contract (10^4 samples)", shake_contract},
        {6, "incremental recheck equals full recount (10^3 moves)",
         incremental_verification},
        {7, "2-decomposition golden case", two_decomposition_golden},
        {8, "byte-identical records across executions and --jobs", determinism},
        {9, "scalability smoke (n=100, 50 iterations, 120 s)", scalability_smoke},
    };

    bool all_pass = true;
    for (const auto& criterion : criteria) {
        Check result;
        auto t0 = Clock::now();
        try {
            result = criterion.run();
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        double secs = elapsed_since(t0);
        all_pass = all_pass && result.pass;
        std::printf("[%s] %d. %s (%.1fs)%s%s\n", result.pass ? "PASS" : "FAIL",
                    criterion.id, criterion.name, secs,
                    result.detail.empty() ? "" : " -- ", result.detail.c_str());
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
