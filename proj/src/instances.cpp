#include "ksrd/instances.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ksrd/rng.hpp"

namespace ksrd {

std::vector<Point> unit_disc_points(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    SplitMix64 rng(seed);
    std::vector<Point> pts(n);
    for (auto& p : pts) {
        p[0] = rng.next_double();
        p[1] = rng.next_double();
    }
    return pts;
}

Graph unit_disc_from_points(const std::vector<Point>& pts, double radius) {
    if (!(radius > 0.0 && radius < 1.0))
        throw std::invalid_argument("radius must be in (0,1)");
    const int n = static_cast<int>(pts.size());
    const double r2 = radius * radius;
    std::vector<Graph::Edge> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            double dx = pts[u][0] - pts[v][0];
            double dy = pts[u][1] - pts[v][1];
            if (dx * dx + dy * dy <= r2) edges.emplace_back(u, v);
        }
    }
    return Graph::from_edges(n, edges);
}

Graph gen_unit_disc(const UnitDiscParams& p) {
    return unit_disc_from_points(unit_disc_points(p.n, p.seed), p.radius);
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    long long n = 0, m = 0;
    if (!(in >> n >> m))
        throw std::runtime_error("edge list: malformed header, expected \"n m\"");
    if (n < 1) throw std::runtime_error("edge list: node count must be >= 1");
    if (m < 0) throw std::runtime_error("edge list: negative edge count");
    std::vector<Graph::Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long u = 0, v = 0;
        if (!(in >> u >> v))
            throw std::runtime_error("edge list: expected " + std::to_string(m) +
                                     " edges, got " + std::to_string(i));
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::runtime_error("edge list: endpoint out of range in edge " +
                                     std::to_string(i));
        if (u == v)
            throw std::runtime_error("edge list: self-loop in edge " + std::to_string(i));
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    std::string extra;
    if (in >> extra) throw std::runtime_error("edge list: trailing data: " + extra);
    return Graph::from_edges(static_cast<int>(n), edges);
}

std::string write_edge_list(const Graph& g) {
    std::string out = std::to_string(g.n()) + " " + std::to_string(g.edge_count()) + "\n";
    for (const auto& [u, v] : g.edges())
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str());
}

void save_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << write_edge_list(g);
}

} // namespace ksrd
