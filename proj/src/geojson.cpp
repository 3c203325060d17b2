#include "ksrd/geojson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace ksrd {

namespace {

struct Bbox {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    void add(const Point& p) {
        min_x = std::min(min_x, p[0]);
        min_y = std::min(min_y, p[1]);
        max_x = std::max(max_x, p[0]);
        max_y = std::max(max_y, p[1]);
    }

    double gap(const Bbox& o) const {
        double dx = std::max({0.0, o.min_x - max_x, min_x - o.max_x});
        double dy = std::max({0.0, o.min_y - max_y, min_y - o.max_y});
        return std::hypot(dx, dy);
    }
};

double dist2(const Point& a, const Point& b) {
    double dx = a[0] - b[0], dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

double point_segment_dist2(const Point& p, const Point& a, const Point& b) {
    double vx = b[0] - a[0], vy = b[1] - a[1];
    double wx = p[0] - a[0], wy = p[1] - a[1];
    double len2 = vx * vx + vy * vy;
    double t = len2 > 0.0 ? std::clamp((wx * vx + wy * vy) / len2, 0.0, 1.0) : 0.0;
    Point proj{a[0] + t * vx, a[1] + t * vy};
    return dist2(p, proj);
}

double cross(const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool segments_intersect(const Point& p1, const Point& p2, const Point& q1,
                        const Point& q2) {
    double d1 = cross(q1, q2, p1), d2 = cross(q1, q2, p2);
    double d3 = cross(p1, p2, q1), d4 = cross(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    auto on = [](const Point& a, const Point& b, const Point& p) {
        return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
               std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
    };
    if (d1 == 0 && on(q1, q2, p1)) return true;
    if (d2 == 0 && on(q1, q2, p2)) return true;
    if (d3 == 0 && on(p1, p2, q1)) return true;
    if (d4 == 0 && on(p1, p2, q2)) return true;
    return false;
}

double segment_segment_dist(const Point& p1, const Point& p2, const Point& q1,
                            const Point& q2) {
    if (segments_intersect(p1, p2, q1, q2)) return 0.0;
    double d2 = std::min({point_segment_dist2(p1, q1, q2), point_segment_dist2(p2, q1, q2),
                          point_segment_dist2(q1, p1, p2), point_segment_dist2(q2, p1, p2)});
    return std::sqrt(d2);
}

void validate_ring(const Ring& ring) {
    if (ring.size() < 4 || ring.front() != ring.back())
        throw std::runtime_error("geometry: ring must be closed with >= 3 vertices");
    // distinct vertex count, closure excluded
    std::vector<Point> distinct(ring.begin(), ring.end() - 1);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw std::runtime_error("geometry: ring needs >= 3 distinct vertices");
}

// Shoelace area (positive) and centroid of a closed ring.
std::pair<double, Point> ring_area_centroid(const Ring& ring) {
    double a2 = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        double w = ring[i][0] * ring[i + 1][1] - ring[i + 1][0] * ring[i][1];
        a2 += w;
        cx += (ring[i][0] + ring[i + 1][0]) * w;
        cy += (ring[i][1] + ring[i + 1][1]) * w;
    }
    if (a2 == 0.0) return {0.0, {0.0, 0.0}};
    return {std::abs(a2) / 2.0, Point{cx / (3.0 * a2), cy / (3.0 * a2)}};
}

Ring parse_ring(const nlohmann::json& coords) {
    Ring ring;
    for (const auto& pt : coords) {
        if (!pt.is_array() || pt.size() < 2)
            throw std::runtime_error("geometry: coordinate must be [x, y]");
        ring.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
    return ring;
}

RegionPart parse_polygon(const nlohmann::json& coords) {
    if (!coords.is_array() || coords.empty())
        throw std::runtime_error("geometry: polygon without rings");
    RegionPart part;
    part.exterior = parse_ring(coords[0]);
    for (std::size_t i = 1; i < coords.size(); ++i)
        part.holes.push_back(parse_ring(coords[i]));
    return part;
}

} // namespace

RegionSet make_region_set(std::vector<Region> regions) {
    if (regions.empty()) throw std::runtime_error("geometry: no regions");
    RegionSet rs;
    rs.centroids.reserve(regions.size());
    for (const auto& region : regions) {
        if (region.parts.empty())
            throw std::runtime_error("geometry: region without polygons: " + region.id);
        double total_area = 0.0, cx = 0.0, cy = 0.0;
        for (const auto& part : region.parts) {
            validate_ring(part.exterior);
            for (const auto& hole : part.holes) validate_ring(hole);
            auto [area, c] = ring_area_centroid(part.exterior);
            total_area += area;
            cx += area * c[0];
            cy += area * c[1];
        }
        if (total_area <= 0.0)
            throw std::runtime_error("geometry: degenerate (zero-area) region: " +
                                     region.id);
        rs.centroids.push_back({cx / total_area, cy / total_area});
    }
    rs.regions = std::move(regions);
    return rs;
}

RegionSet parse_geojson_regions(const std::string& text, const std::string& id_property) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("geojson: parse error: ") + e.what());
    }
    if (doc.value("type", "") != "FeatureCollection" || !doc.contains("features"))
        throw std::runtime_error("geojson: expected a FeatureCollection");

    std::vector<Region> regions;
    std::size_t index = 0;
    for (const auto& feature : doc["features"]) {
        Region region;
        region.id = std::to_string(index);
        if (feature.contains("properties") && feature["properties"].is_object()) {
            const auto& props = feature["properties"];
            if (props.contains(id_property)) {
                const auto& val = props[id_property];
                region.id = val.is_string() ? val.get<std::string>() : val.dump();
            }
        }
        if (!feature.contains("geometry") || !feature["geometry"].is_object())
            throw std::runtime_error("geojson: feature " + std::to_string(index) +
                                     " has no geometry");
        const auto& geom = feature["geometry"];
        const std::string type = geom.value("type", "");
        const auto& coords = geom["coordinates"];
        if (type == "Polygon") {
            region.parts.push_back(parse_polygon(coords));
        } else if (type == "MultiPolygon") {
            for (const auto& poly : coords) region.parts.push_back(parse_polygon(poly));
        } else {
            throw std::runtime_error("geojson: unsupported geometry type \"" + type +
                                     "\" in feature " + std::to_string(index));
        }
        regions.push_back(std::move(region));
        ++index;
    }
    return make_region_set(std::move(regions));
}

RegionGraph geojson_to_graph(const RegionSet& rs, double tol) {
    if (tol < 0.0) throw std::invalid_argument("tolerance must be >= 0");
    const int n = static_cast<int>(rs.regions.size());

    // Flatten every boundary ring (exteriors and holes) per region.
    std::vector<std::vector<const Ring*>> rings(n);
    std::vector<Bbox> boxes(n);
    for (int i = 0; i < n; ++i) {
        for (const auto& part : rs.regions[i].parts) {
            rings[i].push_back(&part.exterior);
            for (const auto& hole : part.holes) rings[i].push_back(&hole);
        }
        for (const Ring* ring : rings[i])
            for (const auto& p : *ring) boxes[i].add(p);
    }

    auto regions_touch = [&](int a, int b) {
        for (const Ring* ra : rings[a]) {
            for (const Ring* rb : rings[b]) {
                for (std::size_t s = 0; s + 1 < ra->size(); ++s) {
                    for (std::size_t t = 0; t + 1 < rb->size(); ++t) {
                        if (segment_segment_dist((*ra)[s], (*ra)[s + 1], (*rb)[t],
                                                 (*rb)[t + 1]) <= tol)
                            return true;
                    }
                }
            }
        }
        return false;
    };

    std::vector<Graph::Edge> edges;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (boxes[a].gap(boxes[b]) > tol) continue;
            if (regions_touch(a, b)) edges.emplace_back(a, b);
        }
    }

    RegionGraph out{Graph::from_edges(n, edges), {}};
    out.region_ids.reserve(n);
    for (const auto& region : rs.regions) out.region_ids.push_back(region.id);
    return out;
}

} // namespace ksrd
