// ksrd: solve, verify, generate and benchmark k-SRD instances.
//
// Subcommands:
//   solve   run greedy / VNS / the exact solver, one JSON record per run
//   verify  check a labeling (exact or quasi mode), exit 0/1/2
//   gen     write instances (unit-disc graphs, GeoJSON extraction)
//   bench   run a manifest of jobs, emit a CSV summary table

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ksrd/attacks.hpp"
#include "ksrd/defense.hpp"
#include "ksrd/geojson.hpp"
#include "ksrd/graph.hpp"
#include "ksrd/greedy.hpp"
#include "ksrd/instances.hpp"
#include "ksrd/oracle.hpp"
#include "ksrd/solution.hpp"
#include "ksrd/vns.hpp"

using nlohmann::ordered_json;

namespace {

struct SolveFlags {
    std::string instance;
    int k = 2;
    std::string algo = "vns";
    std::uint64_t seed = 1;
    int runs = 1;
    ksrd::SolverConfig cfg;
    bool summary = false;
    bool omit_timing = false;
    bool verbose = false;
};

std::string instance_name(const std::string& path) {
    auto slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = base.rfind('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

ordered_json config_echo(const ksrd::SolverConfig& cfg) {
    return ordered_json{{"rmin", cfg.r_min},
                        {"rmax", cfg.r_max},
                        {"move_prob", cfg.move_prob},
                        {"cutoff", cfg.cutoff},
                        {"tries", cfg.tries},
                        {"attack_bound", cfg.comb_take_all_bound},
                        {"ball_radius", cfg.ball_radius},
                        {"time_limit_s", cfg.t_max_s},
                        {"max_iters", cfg.iter_max}};
}

struct RunOutcome {
    ordered_json record;
    int objective = 0;
    double time_to_best = 0.0;
};

RunOutcome run_one(const std::string& path, const ksrd::Graph& g, const SolveFlags& flags,
                   std::uint64_t seed) {
    ksrd::SolverConfig cfg = flags.cfg;
    cfg.k = flags.k;
    cfg.seed = seed;

    ordered_json rec;
    rec["instance"] = instance_name(path);
    rec["n"] = g.n();
    rec["k"] = flags.k;
    rec["algo"] = flags.algo;

    ksrd::Solution sol;
    bool exact_mode = false;
    int non_defended = 0;
    double t_best = 0.0, t_total = 0.0;
    std::uint64_t iterations = 0;

    if (flags.algo == "vns") {
        ksrd::ProgressFn progress;
        if (flags.verbose)
            progress = [](std::uint64_t iter, ksrd::Fitness fit, double elapsed) {
                std::cerr << "iter " << iter << ": weight " << fit.weight << " ("
                          << elapsed << "s)\n";
            };
        ksrd::RunReport report = ksrd::vns_solve(g, cfg, progress);
        sol = std::move(report.best);
        exact_mode = report.exact_mode;
        non_defended = report.fitness.infeasibility;
        t_best = report.time_to_best_s;
        t_total = report.total_time_s;
        iterations = report.iterations;
    } else if (flags.algo == "greedy") {
        auto t0 = ksrd::Clock::now();
        sol = ksrd::greedy(g, flags.k);
        ksrd::AttackSets sets =
            ksrd::generate_attacks(g, flags.k, cfg.comb_take_all_bound, cfg.ball_radius);
        exact_mode = sets.exhaustive;
        ksrd::QuasiResult q = ksrd::quasi_infeasibility(
            g, sol, sets.intense, ksrd::VerifyOptions{cfg.cutoff, cfg.tries},
            ksrd::AttackStreams{seed, 0});
        non_defended = q.non_defended_count;
        t_total = std::chrono::duration<double>(ksrd::Clock::now() - t0).count();
        t_best = t_total;
    } else if (flags.algo == "exact") {
        auto t0 = ksrd::Clock::now();
        ksrd::OptimumResult opt = ksrd::brute_force_optimum(g, flags.k);
        sol = std::move(opt.witness);
        exact_mode = true;
        non_defended = 0;
        t_total = std::chrono::duration<double>(ksrd::Clock::now() - t0).count();
        t_best = t_total;
    } else {
        throw std::runtime_error("unknown algorithm: " + flags.algo);
    }

    if (flags.omit_timing) {
        t_best = 0.0;
        t_total = 0.0;
    }

    rec["objective"] = sol.weight;
    rec["labels"] = sol.labels;
    rec["feasibility_mode"] = exact_mode ? "exact" : "quasi";
    rec["non_defended"] = non_defended;
    rec["time_to_best_s"] = t_best;
    rec["total_time_s"] = t_total;
    rec["iterations"] = iterations;
    rec["seed"] = seed;
    rec["config"] = config_echo(cfg);
    return {std::move(rec), sol.weight, t_best};
}

void emit_summary(std::ostream& out, const std::vector<RunOutcome>& outcomes) {
    double n = static_cast<double>(outcomes.size());
    double mean = 0.0, mean_t = 0.0;
    for (const auto& o : outcomes) {
        mean += o.objective;
        mean_t += o.time_to_best;
    }
    mean /= n;
    mean_t /= n;
    double var = 0.0;
    for (const auto& o : outcomes) var += (o.objective - mean) * (o.objective - mean);
    double sigma_pct = mean > 0.0 ? std::sqrt(var / n) / mean * 100.0 : 0.0;
    ordered_json summary{{"summary", true},
                         {"runs", outcomes.size()},
                         {"mean_obj", mean},
                         {"sigma_pct", sigma_pct},
                         {"mean_t_best", mean_t}};
    out << summary.dump() << "\n";
}

int cmd_solve(const SolveFlags& flags) {
    ksrd::Graph g = ksrd::load_edge_list_file(flags.instance);
    if (flags.k > g.n()) throw std::runtime_error("k exceeds n");
    std::vector<RunOutcome> outcomes;
    outcomes.reserve(flags.runs);
    for (int run = 0; run < flags.runs; ++run) {
        outcomes.push_back(run_one(flags.instance, g, flags, flags.seed + run));
        std::cout << outcomes.back().record.dump() << "\n";
    }
    if (flags.summary) emit_summary(std::cout, outcomes);
    return 0;
}

std::vector<int> parse_labels(const std::string& spec) {
    std::string text = spec;
    if (!spec.empty() && spec[0] == '@') {
        std::ifstream in(spec.substr(1));
        if (!in) throw std::runtime_error("cannot open labels file: " + spec.substr(1));
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    for (auto& c : text)
        if (c == ',') c = ' ';
    std::istringstream in(text);
    std::vector<int> labels;
    int value = 0;
    while (in >> value) labels.push_back(value);
    if (labels.empty()) throw std::runtime_error("no labels given");
    return labels;
}

int cmd_verify(const std::string& instance, int k, const std::string& labels_spec,
               const std::string& mode, const ksrd::SolverConfig& cfg,
               std::uint64_t seed) {
    ksrd::Graph g = ksrd::load_edge_list_file(instance);
    if (k > g.n()) throw std::runtime_error("k exceeds n");
    ksrd::Solution s(parse_labels(labels_spec));
    ksrd::validate_solution(g, k, s);

    int non_defended = 0;
    std::optional<ksrd::Attack> failing;
    if (mode == "exact") {
        auto first = ksrd::first_undefended_attack(g, s, k);
        if (first) {
            failing = *first;
            non_defended =
                static_cast<int>(ksrd::count_undefended_attacks(g, s, k));
        }
    } else if (mode == "quasi") {
        ksrd::AttackSets sets =
            ksrd::generate_attacks(g, k, cfg.comb_take_all_bound, cfg.ball_radius);
        ksrd::QuasiResult q = ksrd::quasi_infeasibility(
            g, s, sets.intense, ksrd::VerifyOptions{cfg.cutoff, cfg.tries},
            ksrd::AttackStreams{seed, 0});
        non_defended = q.non_defended_count;
        if (non_defended > 0) failing = sets.intense[q.coverage.non_defended.front()];
    } else {
        throw std::runtime_error("mode must be exact or quasi");
    }

    ordered_json report{{"instance", instance_name(instance)},
                        {"k", k},
                        {"mode", mode},
                        {"feasible", non_defended == 0},
                        {"non_defended", non_defended}};
    if (failing) report["first_failing_attack"] = *failing;
    std::cout << report.dump() << "\n";
    return non_defended == 0 ? 0 : 1;
}

int cmd_gen_unit_disc(int n, double radius, std::uint64_t seed, const std::string& out) {
    ksrd::Graph g = ksrd::gen_unit_disc({n, radius, seed});
    if (out.empty())
        std::cout << ksrd::write_edge_list(g);
    else
        ksrd::save_edge_list_file(g, out);
    return 0;
}

int cmd_gen_geojson(const std::string& path, double tol, const std::string& id_property,
                    const std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open GeoJSON file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    ksrd::RegionSet rs = ksrd::parse_geojson_regions(buf.str(), id_property);
    ksrd::RegionGraph rg = ksrd::geojson_to_graph(rs, tol);

    ordered_json mapping = ordered_json::array();
    for (std::size_t i = 0; i < rg.region_ids.size(); ++i)
        mapping.push_back(ordered_json{{"node", i},
                                       {"id", rg.region_ids[i]},
                                       {"centroid", rs.centroids[i]}});
    if (out.empty()) {
        std::cout << ksrd::write_edge_list(rg.graph);
        std::cerr << mapping.dump() << "\n";
    } else {
        ksrd::save_edge_list_file(rg.graph, out);
        std::ofstream side(out + ".regions.json", std::ios::binary);
        if (!side) throw std::runtime_error("cannot write sidecar for " + out);
        side << mapping.dump(2) << "\n";
    }
    return 0;
}

struct BenchJob {
    std::string instance;
    int k = 2;
    int runs = 1;
    std::string algo = "vns";
    double time_limit_s = 300.0;
    std::uint64_t max_iters = 5000;
    std::uint64_t seed_base = 1;
};

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return buf;
}

int cmd_bench(const std::string& manifest_path, int jobs, const std::string& out_path,
              bool omit_timing) {
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open manifest: " + manifest_path);
    ordered_json manifest;
    try {
        in >> manifest;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("manifest parse error: ") + e.what());
    }
    if (!manifest.is_array()) throw std::runtime_error("manifest must be a JSON array");

    std::vector<BenchJob> bench_jobs;
    for (const auto& entry : manifest) {
        BenchJob job;
        job.instance = entry.at("instance").get<std::string>();
        job.k = entry.at("k").get<int>();
        job.runs = entry.value("runs", 1);
        job.algo = entry.value("algo", "vns");
        job.time_limit_s = entry.value("time_limit_s", 300.0);
        job.max_iters = entry.value("max_iters", std::uint64_t{5000});
        job.seed_base = entry.value("seed_base", std::uint64_t{1});
        bench_jobs.push_back(std::move(job));
    }

    std::vector<std::string> rows(bench_jobs.size());
    std::mutex queue_mutex;
    std::size_t next = 0;
    auto worker = [&]() {
        while (true) {
            std::size_t mine;
            {
                std::lock_guard<std::mutex> lock(queue_mutex);
                if (next >= bench_jobs.size()) return;
                mine = next++;
            }
            const BenchJob& job = bench_jobs[mine];
            ksrd::Graph g = ksrd::load_edge_list_file(job.instance);
            SolveFlags flags;
            flags.instance = job.instance;
            flags.k = job.k;
            flags.algo = job.algo;
            flags.omit_timing = omit_timing;
            flags.cfg.t_max_s = job.time_limit_s;
            flags.cfg.iter_max = job.max_iters;
            double mean = 0.0, mean_t = 0.0;
            std::vector<int> objectives;
            for (int run = 0; run < job.runs; ++run) {
                RunOutcome outcome = run_one(job.instance, g, flags, job.seed_base + run);
                objectives.push_back(outcome.objective);
                mean += outcome.objective;
                mean_t += outcome.time_to_best;
            }
            mean /= job.runs;
            mean_t /= job.runs;
            double var = 0.0;
            for (int obj : objectives) var += (obj - mean) * (obj - mean);
            double sigma_pct =
                mean > 0.0 ? std::sqrt(var / job.runs) / mean * 100.0 : 0.0;
            std::ostringstream row;
            row << instance_name(job.instance) << "," << g.n() << "," << job.k << ","
                << job.algo << "," << format_double(mean) << ","
                << format_double(sigma_pct) << "," << format_double(mean_t) << ","
                << job.runs << "," << job.seed_base;
            rows[mine] = row.str();
        }
    };

    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs - 1; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ostringstream csv;
    csv << "instance,n,k,algo,mean_obj,sigma_pct,mean_t_best,runs,seed_base\n";
    for (const auto& row : rows) csv << row << "\n";
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write CSV: " + out_path);
        out << csv.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-strong Roman domination solver"};
    app.require_subcommand(1);

    SolveFlags sf;
    auto* solve = app.add_subcommand("solve", "solve an instance");
    solve->add_option("--instance", sf.instance, "edge-list instance file")->required();
    solve->add_option("--k", sf.k, "number of simultaneous attacks")->required();
    solve->add_option("--algo", sf.algo, "vns | greedy | exact")
        ->check(CLI::IsMember({"vns", "greedy", "exact"}));
    solve->add_option("--seed", sf.seed, "base RNG seed");
    solve->add_option("--runs", sf.runs, "independent runs (seeds seed..seed+runs-1)")
        ->check(CLI::PositiveNumber);
    solve->add_option("--time-limit", sf.cfg.t_max_s, "wall-clock limit per run [s]");
    solve->add_option("--max-iters", sf.cfg.iter_max, "VNS iteration limit");
    solve->add_option("--rmin", sf.cfg.r_min, "smallest neighborhood");
    solve->add_option("--rmax", sf.cfg.r_max, "largest neighborhood");
    solve->add_option("--move-prob", sf.cfg.move_prob, "equal-fitness move probability");
    solve->add_option("--cutoff", sf.cfg.cutoff, "deterministic defense cutoff")->check(CLI::PositiveNumber);
    solve->add_option("--tries", sf.cfg.tries, "roulette defense tries")->check(CLI::PositiveNumber);
    solve->add_option("--attack-bound", sf.cfg.comb_take_all_bound,
                      "comb_take_all_bound for attack generation");
    solve->add_option("--ball-radius", sf.cfg.ball_radius, "intense attack ball radius");
    solve->add_flag("--summary", sf.summary, "append a summary JSON line");
    solve->add_flag("--omit-timing", sf.omit_timing,
                    "zero the wall-clock fields (reproducible output)");
    solve->add_flag("--verbose", sf.verbose, "log incumbent updates to stderr");

    std::string v_instance, v_labels, v_mode = "exact";
    int v_k = 2;
    std::uint64_t v_seed = 1;
    ksrd::SolverConfig v_cfg;
    auto* verify = app.add_subcommand("verify", "verify a labeling");
    verify->add_option("--instance", v_instance, "edge-list instance file")->required();
    verify->add_option("--k", v_k, "number of simultaneous attacks")->required();
    verify->add_option("--labels", v_labels, "inline list \"1,0,2\" or @file")->required();
    verify->add_option("--mode", v_mode, "exact | quasi")
        ->check(CLI::IsMember({"exact", "quasi"}));
    verify->add_option("--seed", v_seed, "seed for the quasi verifier");
    verify->add_option("--cutoff", v_cfg.cutoff, "deterministic defense cutoff")->check(CLI::PositiveNumber);
    verify->add_option("--tries", v_cfg.tries, "roulette defense tries")->check(CLI::PositiveNumber);
    verify->add_option("--attack-bound", v_cfg.comb_take_all_bound,
                       "comb_take_all_bound for attack generation");
    verify->add_option("--ball-radius", v_cfg.ball_radius, "intense attack ball radius");

    auto* gen = app.add_subcommand("gen", "generate instances");
    gen->require_subcommand(1);
    int g_n = 10;
    double g_radius = 0.5;
    std::uint64_t g_seed = 1;
    std::string g_out;
    auto* unit_disc = gen->add_subcommand("unit-disc", "random geometric graph");
    unit_disc->add_option("--n", g_n, "node count")->required();
    unit_disc->add_option("--radius", g_radius, "connection radius in (0,1)")->required();
    unit_disc->add_option("--seed", g_seed, "RNG seed");
    unit_disc->add_option("--out", g_out, "output file (stdout if omitted)");

    std::string gj_file, gj_out, gj_id_property = "name";
    double gj_tol = 1e-9;
    auto* from_geojson = gen->add_subcommand("from-geojson", "Queen adjacency graph");
    from_geojson->add_option("file", gj_file, "GeoJSON FeatureCollection")->required();
    from_geojson->add_option("--tol", gj_tol, "boundary distance tolerance");
    from_geojson->add_option("--id-property", gj_id_property,
                             "feature property used as region id");
    from_geojson->add_option("--out", gj_out, "output file (stdout if omitted)");

    std::string b_manifest, b_out;
    int b_jobs = 1;
    bool b_omit_timing = false;
    auto* bench = app.add_subcommand("bench", "run a manifest of jobs");
    bench->add_option("--manifest", b_manifest, "JSON manifest file")->required();
    bench->add_option("--jobs", b_jobs, "concurrent jobs")->check(CLI::PositiveNumber);
    bench->add_option("--out", b_out, "CSV output file (stdout if omitted)");
    bench->add_flag("--omit-timing", b_omit_timing,
                    "zero the wall-clock column (reproducible output)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return cmd_solve(sf);
        if (*verify) return cmd_verify(v_instance, v_k, v_labels, v_mode, v_cfg, v_seed);
        if (*unit_disc) return cmd_gen_unit_disc(g_n, g_radius, g_seed, g_out);
        if (*from_geojson) return cmd_gen_geojson(gj_file, gj_tol, gj_id_property, gj_out);
        if (*bench) return cmd_bench(b_manifest, b_jobs, b_out, b_omit_timing);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
