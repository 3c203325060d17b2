#include "ksrd/oracle.hpp"

#include <stdexcept>

#include "ksrd/defense.hpp"

namespace ksrd {

namespace {

void check_attack_budget(const Graph& g, int k, const OracleBudget& budget) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (g.n() < k) throw std::invalid_argument("k exceeds node count");
    auto total = binomial(g.n(), k);
    if (!total || *total > budget.max_attacks)
        throw std::runtime_error("attack enumeration over budget");
}

// Necessary condition, cheap to test: every 0-node needs a lending neighbor.
bool zero_nodes_defendable(const Graph& g, const Solution& s) {
    for (int v = 0; v < g.n(); ++v) {
        if (s.labels[v] != 0) continue;
        bool ok = false;
        for (int u : g.neighbors(v))
            if (s.labels[u] >= 2) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

} // namespace

std::optional<Attack> first_undefended_attack(const Graph& g, const Solution& s,
                                              int k, const OracleBudget& budget) {
    check_attack_budget(g, k, budget);
    const int n = g.n();
    Attack attack(k);
    for (int i = 0; i < k; ++i) attack[i] = i;
    while (true) {
        if (!defend_exact(g, s, attack).defended) return attack;
        int i = k - 1;
        while (i >= 0 && attack[i] == n - k + i) --i;
        if (i < 0) break;
        ++attack[i];
        for (int j = i + 1; j < k; ++j) attack[j] = attack[j - 1] + 1;
    }
    return std::nullopt;
}

bool exact_feasible(const Graph& g, const Solution& s, int k,
                    const OracleBudget& budget) {
    if (!zero_nodes_defendable(g, s)) {
        check_attack_budget(g, k, budget); // keep the budget contract
        return false;
    }
    return !first_undefended_attack(g, s, k, budget).has_value();
}

std::uint64_t count_undefended_attacks(const Graph& g, const Solution& s, int k,
                                       const OracleBudget& budget) {
    check_attack_budget(g, k, budget);
    const int n = g.n();
    Attack attack(k);
    for (int i = 0; i < k; ++i) attack[i] = i;
    std::uint64_t count = 0;
    while (true) {
        if (!defend_exact(g, s, attack).defended) ++count;
        int i = k - 1;
        while (i >= 0 && attack[i] == n - k + i) --i;
        if (i < 0) break;
        ++attack[i];
        for (int j = i + 1; j < k; ++j) attack[j] = attack[j - 1] + 1;
    }
    return count;
}

OptimumResult brute_force_optimum(const Graph& g, int k, const OracleBudget& budget) {
    check_attack_budget(g, k, budget);
    const int n = g.n();
    const int cap = label_cap(g, k);

    std::uint64_t visited = 0;
    std::vector<int> labels(n, 0);
    Solution found;

    // Enumerate labelings with a fixed total weight; deepening on the weight
    // makes the first feasible hit the optimum.
    auto enumerate = [&](auto&& self, int pos, int remaining) -> bool {
        if (remaining > (n - pos) * cap) return false;
        if (pos == n) {
            if (++visited > budget.max_labelings)
                throw std::runtime_error("labeling enumeration over budget");
            Solution s(labels);
            if (!zero_nodes_defendable(g, s)) return false;
            if (!first_undefended_attack(g, s, k, budget)) {
                found = std::move(s);
                return true;
            }
            return false;
        }
        for (int value = 0; value <= std::min(cap, remaining); ++value) {
            labels[pos] = value;
            if (self(self, pos + 1, remaining - value)) return true;
        }
        labels[pos] = 0;
        return false;
    };

    for (int w = 0; w <= n * cap; ++w) {
        std::fill(labels.begin(), labels.end(), 0);
        if (enumerate(enumerate, 0, w)) return {w, std::move(found)};
    }
    throw std::logic_error("no feasible labeling found"); // all-ones is always feasible
}

} // namespace ksrd
