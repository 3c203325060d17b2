#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ksrd/graph.hpp"

namespace ksrd {

using Point = std::array<double, 2>;

struct UnitDiscParams {
    int n = 1;
    double radius = 0.5; // in (0, 1)
    std::uint64_t seed = 1;
};

/// n points uniform in the unit square (SplitMix64 stream: x then y per
/// node), edge iff Euclidean distance <= radius.
Graph gen_unit_disc(const UnitDiscParams& p);

/// The point set gen_unit_disc connects for a given seed.
std::vector<Point> unit_disc_points(int n, std::uint64_t seed);

/// Distance-threshold graph over explicit points.
Graph unit_disc_from_points(const std::vector<Point>& pts, double radius);

/// Edge-list text format: header "n m", then m lines "u v" (0-based).
/// Writing is canonical: u < v per edge, edges sorted, LF endings.
Graph parse_edge_list(const std::string& text);
std::string write_edge_list(const Graph& g);

Graph load_edge_list_file(const std::string& path);
void save_edge_list_file(const Graph& g, const std::string& path);

} // namespace ksrd
