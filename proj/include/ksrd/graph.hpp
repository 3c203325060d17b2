#pragma once

#include <utility>
#include <vector>

namespace ksrd {

/// Immutable simple undirected graph with 0-based node ids.
/// Adjacency lists are kept sorted so that iteration order (and therefore
/// every seeded run built on top of it) is identical across platforms.
class Graph {
public:
    using Edge = std::pair<int, int>;

    // Builds a graph from an unordered edge list. Duplicate edges are
    // collapsed; self-loops and out-of-range endpoints are rejected.
    static Graph from_edges(int n, const std::vector<Edge>& edges);

    int n() const { return n_; }
    int edge_count() const { return m_; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const { return max_degree_; }

    const std::vector<int>& neighbors(int v) const { return adj_[v]; }

    /// adj(v) together with v itself, sorted.
    std::vector<int> closed_neighborhood(int v) const;

    /// All nodes at distance <= radius from v (BFS), sorted; includes v.
    std::vector<int> ball(int v, int radius) const;

    /// Canonical edge list: u < v, lexicographically sorted.
    std::vector<Edge> edges() const;

private:
    int n_ = 0;
    int m_ = 0;
    int max_degree_ = 0;
    std::vector<std::vector<int>> adj_;
};

} // namespace ksrd
