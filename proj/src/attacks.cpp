#include "ksrd/attacks.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace ksrd {

std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i, checked
        std::uint64_t num = n - k + i;
        if (result > UINT64_MAX / num) return std::nullopt;
        result = result * num / i;
    }
    return result;
}

std::vector<Attack> k_combinations(const std::vector<int>& sorted_set, int k) {
    std::vector<Attack> out;
    const int m = static_cast<int>(sorted_set.size());
    if (k < 0 || k > m) return out;
    if (k == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        Attack a(k);
        for (int i = 0; i < k; ++i) a[i] = sorted_set[idx[i]];
        out.push_back(std::move(a));
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

namespace {

// Colex rank of a strictly increasing k-subset; bijective onto [0, C(n,k)).
// binom_table[a][i] = C(a, i).
std::uint64_t colex_rank(const int* a, int k,
                         const std::vector<std::vector<std::uint64_t>>& binom_table) {
    std::uint64_t r = 0;
    for (int i = 0; i < k; ++i) r += binom_table[a[i]][i + 1];
    return r;
}

// Deduplicated union of comb(set, k) over the given sorted node sets.
// Sets fully contained in an already processed one contribute nothing and
// are skipped up front.
std::vector<Attack> union_of_combinations(std::vector<std::vector<int>> sets,
                                          int k, int n,
                                          std::optional<std::uint64_t> total) {
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        return a.size() > b.size();
    });
    std::vector<const std::vector<int>*> kept;
    for (const auto& s : sets) {
        bool contained = false;
        for (const auto* big : kept) {
            if (std::includes(big->begin(), big->end(), s.begin(), s.end())) {
                contained = true;
                break;
            }
        }
        if (!contained) kept.push_back(&s);
    }

    std::vector<std::vector<std::uint64_t>> binom_table;
    const bool rankable = total.has_value();
    if (rankable) {
        binom_table.assign(n + 1, std::vector<std::uint64_t>(k + 2, 0));
        for (int a = 0; a <= n; ++a) {
            binom_table[a][0] = 1;
            for (int i = 1; i <= k + 1; ++i) {
                binom_table[a][i] = (a == 0) ? 0 : binom_table[a - 1][i - 1] +
                                                       binom_table[a - 1][i];
            }
        }
    }

    constexpr std::uint64_t kBitsetLimit = 1ULL << 28;
    std::vector<bool> seen_bits;
    std::unordered_set<std::uint64_t> seen_ranks;
    std::set<Attack> seen_attacks; // fallback when C(n,k) overflows u64
    if (rankable && *total <= kBitsetLimit) seen_bits.assign(*total, false);

    std::vector<Attack> out;
    std::vector<int> pick(k);
    for (const auto* sp : kept) {
        const auto& s = *sp;
        const int m = static_cast<int>(s.size());
        if (m < k) continue;
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            for (int i = 0; i < k; ++i) pick[i] = s[idx[i]];
            bool fresh;
            if (!seen_bits.empty()) {
                std::uint64_t r = colex_rank(pick.data(), k, binom_table);
                fresh = !seen_bits[r];
                if (fresh) seen_bits[r] = true;
            } else if (rankable) {
                fresh = seen_ranks.insert(colex_rank(pick.data(), k, binom_table)).second;
            } else {
                fresh = seen_attacks.insert(Attack(pick.begin(), pick.end())).second;
            }
            if (fresh) out.emplace_back(pick.begin(), pick.end());
            int i = k - 1;
            while (i >= 0 && idx[i] == m - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Attack> all_attacks(int n, int k) {
    std::vector<int> everyone(n);
    for (int i = 0; i < n; ++i) everyone[i] = i;
    return k_combinations(everyone, k);
}

} // namespace

AttackSets generate_attacks(const Graph& g, int k, std::uint64_t bound,
                            int ball_radius) {
    const int n = g.n();
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (n < k) throw std::invalid_argument("k exceeds node count");

    const std::optional<std::uint64_t> total = binomial(n, k);
    AttackSets sets;

    // Overflowing C(n,k) is treated as >= bound.
    if (total && *total < bound) {
        sets.intense = all_attacks(n, k);
        sets.lightweight = sets.intense;
        sets.exhaustive = true;
        return sets;
    }

    std::vector<std::vector<int>> balls(n);
    bool whole_graph = false;
    for (int v = 0; v < n; ++v) {
        balls[v] = g.ball(v, ball_radius);
        if (static_cast<int>(balls[v].size()) == n) whole_graph = true;
    }
    if (whole_graph)
        sets.intense = all_attacks(n, k);
    else
        sets.intense = union_of_combinations(std::move(balls), k, n, total);

    sets.exhaustive = total && sets.intense.size() == *total;

    if (sets.intense.size() <= bound) {
        sets.lightweight = sets.intense;
    } else {
        std::vector<std::vector<int>> hoods(n);
        for (int v = 0; v < n; ++v) hoods[v] = g.closed_neighborhood(v);
        sets.lightweight = union_of_combinations(std::move(hoods), k, n, total);
    }
    return sets;
}

} // namespace ksrd
