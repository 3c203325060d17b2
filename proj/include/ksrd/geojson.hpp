#pragma once

#include <string>
#include <vector>

#include "ksrd/graph.hpp"
#include "ksrd/instances.hpp"

namespace ksrd {

/// Closed coordinate ring (first point == last point, >= 3 distinct).
using Ring = std::vector<Point>;

struct RegionPart {
    Ring exterior;
    std::vector<Ring> holes;
};

struct Region {
    std::string id;
    std::vector<RegionPart> parts; // one for Polygon, several for MultiPolygon
};

struct RegionSet {
    std::vector<Region> regions;
    std::vector<Point> centroids; // area-weighted over each region's parts
};

/// Validates rings and computes centroids. Throws on open rings, too few
/// vertices, or zero-area regions.
RegionSet make_region_set(std::vector<Region> regions);

/// Parses a GeoJSON FeatureCollection of Polygon/MultiPolygon features.
/// The region id comes from properties[id_property] when present, else the
/// feature index.
RegionSet parse_geojson_regions(const std::string& text,
                                const std::string& id_property = "name");

struct RegionGraph {
    Graph graph;                         // node i == regions[i]
    std::vector<std::string> region_ids;
};

/// Queen adjacency: two regions are linked iff their boundary rings come
/// within tol of each other (corner contact included).
RegionGraph geojson_to_graph(const RegionSet& rs, double tol = 1e-9);

} // namespace ksrd
