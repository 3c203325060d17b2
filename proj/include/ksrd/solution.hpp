#pragma once

#include <numeric>
#include <vector>

#include "ksrd/graph.hpp"

namespace ksrd {

/// Upper bound of the label codomain: min(max degree, k) + 1.
inline int label_cap(const Graph& g, int k) {
    return std::min(g.max_degree(), k) + 1;
}

/// Army assignment: one integer label per node plus the cached total.
struct Solution {
    std::vector<int> labels;
    int weight = 0;

    Solution() = default;
    explicit Solution(std::vector<int> l)
        : labels(std::move(l)),
          weight(std::accumulate(labels.begin(), labels.end(), 0)) {}

    void set_label(int v, int value) {
        weight += value - labels[v];
        labels[v] = value;
    }

    int n() const { return static_cast<int>(labels.size()); }

    bool operator==(const Solution& other) const { return labels == other.labels; }
};

/// Throws std::invalid_argument if s is not a valid labeling for (g, k).
void validate_solution(const Graph& g, int k, const Solution& s);

} // namespace ksrd
