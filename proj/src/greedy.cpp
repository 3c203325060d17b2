#include "ksrd/greedy.hpp"

#include <stdexcept>
#include <vector>

namespace ksrd {

Solution greedy(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const int n = g.n();
    const int cap = label_cap(g, k);
    std::vector<int> labels(n, 0);
    std::vector<char> covered(n, 0), labeled(n, 0);
    int covered_count = 0;

    while (covered_count < n) {
        // g(v) = |N[v] \ covered| over not-yet-labeled v; ties prefer
        // uncovered nodes, then the smallest id.
        int best = -1, best_g = -1;
        bool best_uncovered = false;
        for (int v = 0; v < n; ++v) {
            if (labeled[v]) continue;
            int gv = covered[v] ? 0 : 1;
            for (int u : g.neighbors(v))
                if (!covered[u]) ++gv;
            bool unc = !covered[v];
            if (gv > best_g || (gv == best_g && unc && !best_uncovered)) {
                best = v;
                best_g = gv;
                best_uncovered = unc;
            }
        }
        const int not_counted = covered[best] ? 1 : 0;
        labels[best] = std::min({k + 1, best_g + not_counted, cap});
        labeled[best] = 1;
        if (!covered[best]) {
            covered[best] = 1;
            ++covered_count;
        }
        for (int u : g.neighbors(best)) {
            if (!covered[u]) {
                covered[u] = 1;
                ++covered_count;
            }
        }
    }
    return Solution(std::move(labels));
}

} // namespace ksrd
