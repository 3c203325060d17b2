#include "ksrd/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace ksrd {

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
    if (n < 1) throw std::invalid_argument("graph needs at least one node");
    Graph g;
    g.n_ = n;
    g.adj_.assign(n, {});
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("edge endpoint out of range: (" +
                                        std::to_string(u) + "," + std::to_string(v) + ")");
        if (u == v)
            throw std::invalid_argument("self-loop at node " + std::to_string(u));
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    int m2 = 0;
    for (auto& list : g.adj_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        m2 += static_cast<int>(list.size());
        g.max_degree_ = std::max(g.max_degree_, static_cast<int>(list.size()));
    }
    g.m_ = m2 / 2;
    return g;
}

std::vector<int> Graph::closed_neighborhood(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("node out of range");
    std::vector<int> out = adj_[v];
    out.insert(std::lower_bound(out.begin(), out.end(), v), v);
    return out;
}

std::vector<int> Graph::ball(int v, int radius) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("node out of range");
    if (radius < 0) throw std::invalid_argument("radius must be >= 0");
    std::vector<int> dist(n_, -1);
    std::deque<int> queue{v};
    dist[v] = 0;
    std::vector<int> out{v};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (dist[u] == radius) continue;
        for (int w : adj_[u]) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                out.push_back(w);
                queue.push_back(w);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Graph::Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (int u = 0; u < n_; ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

} // namespace ksrd
