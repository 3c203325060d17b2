#include "ksrd/defense.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ksrd {

void validate_solution(const Graph& g, int k, const Solution& s) {
    if (s.n() != g.n())
        throw std::invalid_argument("label vector length does not match graph");
    const int cap = label_cap(g, k);
    for (int v = 0; v < g.n(); ++v) {
        if (s.labels[v] < 0 || s.labels[v] > cap)
            throw std::invalid_argument("label " + std::to_string(s.labels[v]) +
                                        " at node " + std::to_string(v) +
                                        " outside [0," + std::to_string(cap) + "]");
    }
}

std::vector<int> alternatives_for(const Graph& g, const Solution& s, int v) {
    std::vector<int> out;
    for (int u : g.neighbors(v))
        if (s.labels[u] >= 2) out.push_back(u);
    return out;
}

namespace detail {

namespace {

// Armies already committed to other attacked nodes in this assignment.
int committed(const std::vector<std::pair<int, int>>& uses, int node) {
    for (const auto& [u, c] : uses)
        if (u == node) return c;
    return 0;
}

void commit(std::vector<std::pair<int, int>>& uses, int node) {
    for (auto& [u, c] : uses) {
        if (u == node) {
            ++c;
            return;
        }
    }
    uses.emplace_back(node, 1);
}

// Odometer over the Cartesian product of alternatives; defended iff some
// assignment keeps every defender within labels[u] - 1. On success
// scratch.assign[i] holds the defender of reduced[i].
bool deterministic_core(const Solution& s, const std::vector<int>& reduced,
                        const std::vector<std::vector<int>>& alternatives,
                        DefenseScratch& scratch) {
    const int r = static_cast<int>(reduced.size());
    scratch.odometer.assign(r, 0);
    auto& uses = scratch.uses;
    while (true) {
        uses.clear();
        bool ok = true;
        for (int i = 0; i < r && ok; ++i) {
            int u = alternatives[i][scratch.odometer[i]];
            if (committed(uses, u) + 1 > s.labels[u] - 1)
                ok = false;
            else
                commit(uses, u);
        }
        if (ok) {
            scratch.assign.assign(r, 0);
            for (int i = 0; i < r; ++i)
                scratch.assign[i] = alternatives[i][scratch.odometer[i]];
            return true;
        }
        int i = r - 1;
        while (i >= 0 &&
               scratch.odometer[i] + 1 == static_cast<int>(alternatives[i].size())) {
            scratch.odometer[i] = 0;
            --i;
        }
        if (i < 0) return false;
        ++scratch.odometer[i];
    }
}

// One roulette pass per try: each reduced node draws a neighbor with
// probability proportional to its free armies. Fills scratch.assign on
// success.
bool roulette_core(const Graph& g, const Solution& s, const std::vector<int>& reduced,
                   int tries, SplitMix64& rng, DefenseScratch& scratch) {
    const int r = static_cast<int>(reduced.size());
    auto& uses = scratch.uses;
    for (int t = 0; t < tries; ++t) {
        uses.clear();
        scratch.assign.assign(r, -1);
        bool ok = true;
        for (int i = 0; i < r; ++i) {
            const int v = reduced[i];
            long long total = 0;
            for (int u : g.neighbors(v)) {
                int diff = s.labels[u] - 1 - committed(uses, u);
                if (diff > 0) total += diff;
            }
            if (total == 0) {
                ok = false;
                break;
            }
            std::uint64_t x = rng.next_below(static_cast<std::uint64_t>(total));
            int chosen = -1;
            for (int u : g.neighbors(v)) {
                int diff = s.labels[u] - 1 - committed(uses, u);
                if (diff <= 0) continue;
                if (x < static_cast<std::uint64_t>(diff)) {
                    chosen = u;
                    break;
                }
                x -= diff;
            }
            scratch.assign[i] = chosen;
            commit(uses, chosen);
        }
        if (ok) return true;
    }
    return false;
}

DefenseOutcome outcome_from_scratch(const std::vector<int>& reduced,
                                    const std::vector<int>& assign,
                                    const std::vector<int>& self_defenders) {
    DefenseOutcome out;
    out.defended = true;
    out.self_defenders = self_defenders;
    out.covered.reserve(reduced.size());
    for (std::size_t i = 0; i < reduced.size(); ++i)
        out.covered.emplace_back(reduced[i], assign[i]);
    return out;
}

} // namespace

bool check_attack(const Graph& g, const Solution& s, const Attack& attack,
                  const VerifyOptions& opt, SplitMix64& rng,
                  DefenseScratch& scratch, DefenseOutcome* out) {
    scratch.reduced.clear();
    scratch.self_defenders.clear();
    std::size_t slot = 0;
    std::uint64_t product = 1;
    for (int v : attack) {
        if (s.labels[v] > 0) {
            scratch.self_defenders.push_back(v);
            continue;
        }
        if (slot == scratch.alternatives.size()) scratch.alternatives.emplace_back();
        auto& alts = scratch.alternatives[slot];
        alts.clear();
        for (int u : g.neighbors(v))
            if (s.labels[u] >= 2) alts.push_back(u);
        if (alts.empty()) {
            if (out) *out = DefenseOutcome{};
            return false;
        }
        scratch.reduced.push_back(v);
        ++slot;
        // saturating product of alternative counts
        std::uint64_t sz = alts.size();
        product = (product > UINT64_MAX / sz) ? UINT64_MAX : product * sz;
    }

    bool defended;
    if (product < static_cast<std::uint64_t>(opt.cutoff))
        defended = deterministic_core(s, scratch.reduced, scratch.alternatives, scratch);
    else
        defended = roulette_core(g, s, scratch.reduced, opt.tries, rng, scratch);

    if (out) {
        *out = defended ? outcome_from_scratch(scratch.reduced, scratch.assign,
                                               scratch.self_defenders)
                        : DefenseOutcome{};
    }
    return defended;
}

} // namespace detail

DefenseOutcome deterministic_defense(const Solution& s,
                                     const std::vector<int>& reduced_attack,
                                     const std::vector<std::vector<int>>& alternatives,
                                     const std::vector<int>& self_defenders) {
    detail::DefenseScratch scratch;
    if (!detail::deterministic_core(s, reduced_attack, alternatives, scratch))
        return {};
    return detail::outcome_from_scratch(reduced_attack, scratch.assign, self_defenders);
}

DefenseOutcome roulette_defense(const Graph& g, const Solution& s,
                                const std::vector<int>& reduced_attack,
                                const std::vector<int>& self_defenders,
                                int tries, SplitMix64& rng) {
    if (tries < 1) throw std::invalid_argument("tries must be >= 1");
    detail::DefenseScratch scratch;
    if (!detail::roulette_core(g, s, reduced_attack, tries, rng, scratch))
        return {};
    return detail::outcome_from_scratch(reduced_attack, scratch.assign, self_defenders);
}

DefenseOutcome is_attack_defended(const Graph& g, const Solution& s,
                                  const Attack& attack, int cutoff, int tries,
                                  SplitMix64& rng) {
    detail::DefenseScratch scratch;
    DefenseOutcome out;
    detail::check_attack(g, s, attack, VerifyOptions{cutoff, tries}, rng, scratch, &out);
    return out;
}

DefenseOutcome defend_exact(const Graph& g, const Solution& s, const Attack& attack) {
    DefenseOutcome out;
    std::vector<int> reduced;
    for (int v : attack) {
        if (s.labels[v] > 0) {
            out.self_defenders.push_back(v);
        } else {
            reduced.push_back(v);
        }
    }

    // Capacity-constrained bipartite matching, right capacities expanded into
    // unit slots (attacks are tiny, so the expansion stays small).
    std::vector<int> slot_owner; // slot -> defender node
    std::vector<int> slot_of_node_first;
    std::vector<int> node_ids;
    auto slots_of = [&](int u) -> std::pair<int, int> {
        for (std::size_t i = 0; i < node_ids.size(); ++i)
            if (node_ids[i] == u)
                return {slot_of_node_first[i], s.labels[u] - 1};
        int first = static_cast<int>(slot_owner.size());
        node_ids.push_back(u);
        slot_of_node_first.push_back(first);
        for (int c = 0; c < s.labels[u] - 1; ++c) slot_owner.push_back(u);
        return {first, s.labels[u] - 1};
    };
    std::vector<std::vector<int>> slot_lists(reduced.size());
    for (std::size_t i = 0; i < reduced.size(); ++i) {
        for (int u : g.neighbors(reduced[i])) {
            if (s.labels[u] >= 2) {
                auto [first, count] = slots_of(u);
                for (int c = 0; c < count; ++c) slot_lists[i].push_back(first + c);
            }
        }
        if (slot_lists[i].empty()) return out; // not defended
    }

    std::vector<int> slot_match(slot_owner.size(), -1);
    std::vector<char> visited;
    auto augment = [&](auto&& self, int left) -> bool {
        for (int slot : slot_lists[left]) {
            if (visited[slot]) continue;
            visited[slot] = 1;
            if (slot_match[slot] < 0 || self(self, slot_match[slot])) {
                slot_match[slot] = left;
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < reduced.size(); ++i) {
        visited.assign(slot_owner.size(), 0);
        if (!augment(augment, static_cast<int>(i))) return out; // unsaturated
    }

    out.defended = true;
    out.covered.resize(reduced.size());
    for (std::size_t slot = 0; slot < slot_match.size(); ++slot)
        if (slot_match[slot] >= 0)
            out.covered[slot_match[slot]] = {reduced[slot_match[slot]],
                                             slot_owner[slot]};
    return out;
}

QuasiResult quasi_infeasibility(const Graph& g, const Solution& s,
                                const std::vector<Attack>& attacks,
                                const VerifyOptions& opt,
                                const AttackStreams& streams) {
    QuasiResult result;
    result.coverage.epoch = streams.epoch;
    result.coverage.defended_by.assign(g.n(), {});
    detail::DefenseScratch scratch;
    auto record = [&](int node, int attack_idx, int armies) {
        auto& list = result.coverage.defended_by[node];
        if (list.empty() || list.back().attack != attack_idx)
            list.push_back({attack_idx, armies});
        else
            list.back().lent += armies;
    };
    for (std::size_t i = 0; i < attacks.size(); ++i) {
        SplitMix64 rng = streams.stream(i);
        if (detail::check_attack(g, s, attacks[i], opt, rng, scratch, nullptr)) {
            const int idx = static_cast<int>(i);
            for (int v : scratch.self_defenders) record(v, idx, 0);
            for (std::size_t slot = 0; slot < scratch.reduced.size(); ++slot)
                record(scratch.assign[slot], idx, 1);
        } else {
            result.coverage.non_defended.push_back(static_cast<int>(i));
        }
    }
    result.non_defended_count = static_cast<int>(result.coverage.non_defended.size());
    return result;
}

} // namespace ksrd
