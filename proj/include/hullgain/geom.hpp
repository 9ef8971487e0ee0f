#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hullgain::geom {

// Coincidence / collinearity tolerance in meters. World coordinates are
// O(100 m), so doubles leave ample headroom below this.
inline constexpr double kEpsGeom = 1e-9;
// Circumcircle slack in m^2, applied to (r^2 - d^2).
inline constexpr double kEpsCirc = 1e-9;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Point2& o) const = default;
};

double dot(const Point2& a, const Point2& b);
double norm(const Point2& p);
double dist(const Point2& a, const Point2& b);

/// Signed area of the turn o->a->b: positive = counter-clockwise,
/// |value| <= kEpsGeom is treated as collinear by callers.
double cross(const Point2& o, const Point2& a, const Point2& b);

/// Raw 2D cross product a x b.
double cross(const Point2& a, const Point2& b);

enum class NodeLabel : std::uint8_t {
    Successful,
    Occupied,     // expansion attempt hit an obstacle
    Unknown,      // expansion attempt landed in unmapped space (frontier)
    BeyondWindow  // outside the sliding window
};

const char* to_string(NodeLabel label);

/// True for labels a robot could move past (Successful / Unknown).
bool is_passable_label(NodeLabel label);

struct LabeledNode {
    Point2 position;
    NodeLabel label = NodeLabel::Successful;
};

/// Strict proper-intersection test for closed segments ab and cd.
///
/// Uses the double sign test: endpoints of each segment must lie strictly
/// on opposite sides of the other segment's line. Touching at an endpoint
/// or collinear overlap therefore reports false.
/// Throws std::invalid_argument if either segment is shorter than kEpsGeom.
bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

struct Triangulation {
    std::vector<Point2> vertices;  // deduplicated input points
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::pair<int, int>> exterior_edges;  // edges on exactly one triangle
};

/// Delaunay triangulation (incremental Bowyer-Watson). Input points are
/// deduplicated within kEpsGeom first. Throws std::invalid_argument if
/// fewer than 3 distinct points remain or all are collinear.
Triangulation delaunay(std::span<const Point2> points);

struct ConcaveHull {
    // Closed simple polygon, counter-clockwise; edge i connects
    // boundary[i] -> boundary[(i+1) % size].
    std::vector<LabeledNode> boundary;
    // Edge metadata: both endpoints passable.
    std::vector<bool> edge_passable;
    // Edges the peel wanted to remove (length > max edge length) but could
    // not without breaking polygon regularity.
    std::vector<bool> edge_removal_blocked;
    // Set by filter_hull when filtering would have left < 3 vertices and
    // the hull was returned unfiltered instead.
    bool filter_warning = false;

    int size() const { return static_cast<int>(boundary.size()); }
    const Point2& vertex(int i) const { return boundary[i].position; }
    double edge_length(int i) const;
    double perimeter() const;
};

/// Concave hull by repeatedly deleting the longest exterior edge whose
/// length exceeds max_edge_len from the Delaunay triangulation of the
/// nodes. An edge is only deletable when the vertex it would expose is not
/// already on the boundary (otherwise the polygon would pinch) and at
/// least one triangle remains. Ties on length break on the smaller
/// (vertex-index-pair) key. Coincident nodes are merged beforehand with
/// label priority Occupied > Successful > Unknown > BeyondWindow.
ConcaveHull concave_hull(std::span<const LabeledNode> nodes, double max_edge_len);

/// Removes every maximal run of consecutive passable boundary nodes whose
/// span (impassable flank to impassable flank along the boundary) is
/// shorter than 2 * robot_size, re-closing the polygon across the gap.
/// A hull whose boundary is entirely passable is compared against its
/// perimeter. Returns the input unchanged (filter_warning set) if removal
/// would leave fewer than 3 vertices.
ConcaveHull filter_hull(const ConcaveHull& hull, double robot_size);

/// Even-odd crossing-number test. Points within kEpsGeom of an edge count
/// as inside. Throws std::invalid_argument for polygons with < 3 vertices.
bool point_in_polygon(const Point2& p, std::span<const Point2> polygon);
bool point_in_polygon(const Point2& p, const ConcaveHull& hull);

/// Distance from p to the closed segment ab.
double point_segment_distance(const Point2& p, const Point2& a, const Point2& b);

/// Merge nodes closer than kEpsGeom, keeping one representative per
/// cluster with label priority Occupied > Successful > Unknown >
/// BeyondWindow.
std::vector<LabeledNode> dedup_nodes(std::span<const LabeledNode> nodes);

}  // namespace hullgain::geom
