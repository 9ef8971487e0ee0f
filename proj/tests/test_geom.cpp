#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hullgain/geom.hpp"
#include "oracles.hpp"

using namespace hullgain::geom;

TEST_CASE("cross orientation") {
    CHECK(cross({0, 0}, {1, 0}, {0, 1}) == doctest::Approx(1.0));
    CHECK(cross({0, 0}, {1, 1}, {2, 2}) == doctest::Approx(0.0));
    CHECK(cross({0, 0}, {0, 1}, {1, 0}) == doctest::Approx(-1.0));
}

TEST_CASE("segments_intersect basics") {
    CHECK(segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
    CHECK_FALSE(segments_intersect({0, 0}, {1, 1}, {2, 2}, {3, 3}));
    // Touching at an endpoint does not count under the strict sign test.
    CHECK_FALSE(segments_intersect({0, 0}, {1, 1}, {1, 1}, {2, 0}));
    CHECK_THROWS_AS(segments_intersect({0, 0}, {0, 0}, {1, 0}, {2, 0}), std::invalid_argument);
}

TEST_CASE("segments_intersect agrees with orientation oracle on random pairs") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    int checked = 0;
    for (int it = 0; it < 12000; ++it) {
        const Point2 a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)};
        const Point2 c{coord(rng), coord(rng)}, d{coord(rng), coord(rng)};
        // Skip eps-boundary configurations where strict and closed
        // semantics may differ.
        const double band = 1e-7;
        if (std::abs(oracles::orient(a, b, c)) < band || std::abs(oracles::orient(a, b, d)) < band ||
            std::abs(oracles::orient(c, d, a)) < band || std::abs(oracles::orient(c, d, b)) < band) {
            continue;
        }
        const bool expect = oracles::segments_intersect_closed(a, b, c, d);
        CHECK(segments_intersect(a, b, c, d) == expect);
        ++checked;
    }
    CHECK(checked > 10000);
}

TEST_CASE("segments_intersect 8-way symmetry") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    for (int it = 0; it < 2000; ++it) {
        const Point2 a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)};
        const Point2 c{coord(rng), coord(rng)}, d{coord(rng), coord(rng)};
        const bool r = segments_intersect(a, b, c, d);
        CHECK(segments_intersect(b, a, c, d) == r);
        CHECK(segments_intersect(a, b, d, c) == r);
        CHECK(segments_intersect(b, a, d, c) == r);
        CHECK(segments_intersect(c, d, a, b) == r);
        CHECK(segments_intersect(d, c, a, b) == r);
        CHECK(segments_intersect(c, d, b, a) == r);
        CHECK(segments_intersect(d, c, b, a) == r);
    }
}

TEST_CASE("point_in_polygon unit square") {
    const std::vector<Point2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(point_in_polygon({0.5, 0.5}, square));
    CHECK_FALSE(point_in_polygon({1.5, 0.5}, square));
    // Boundary band counts as inside.
    CHECK(point_in_polygon({1.0, 0.5}, square));
    const std::vector<Point2> degenerate{{0, 0}, {1, 0}};
    CHECK_THROWS_AS(point_in_polygon({0, 0}, degenerate), std::invalid_argument);
}

TEST_CASE("point_in_polygon agrees with winding oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coord(-1.2, 1.2);
    int checked = 0;
    for (int pi = 0; pi < 400; ++pi) {
        const auto poly = oracles::random_star_polygon(rng);
        for (int qi = 0; qi < 30; ++qi) {
            const Point2 p{coord(rng), coord(rng)};
            bool near_edge = false;
            for (size_t e = 0; e < poly.size() && !near_edge; ++e) {
                near_edge =
                    point_segment_distance(p, poly[e], poly[(e + 1) % poly.size()]) < 1e-7;
            }
            if (near_edge) continue;
            CHECK(point_in_polygon(p, poly) == oracles::inside_by_winding(p, poly));
            ++checked;
        }
    }
    CHECK(checked > 10000);
}

TEST_CASE("point_in_polygon invariant under start-index rotation") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> coord(-1.2, 1.2);
    for (int pi = 0; pi < 50; ++pi) {
        auto poly = oracles::random_star_polygon(rng);
        const Point2 p{coord(rng), coord(rng)};
        const bool expect = point_in_polygon(p, poly);
        for (int rot = 0; rot < 5; ++rot) {
            std::rotate(poly.begin(), poly.begin() + 1, poly.end());
            CHECK(point_in_polygon(p, poly) == expect);
        }
    }
}

TEST_CASE("delaunay small cases") {
    const std::vector<Point2> tri{{0, 0}, {1, 0}, {0.5, 1}};
    const auto t1 = delaunay(tri);
    CHECK(t1.triangles.size() == 1);
    CHECK(t1.exterior_edges.size() == 3);

    const std::vector<Point2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const auto t2 = delaunay(square);
    CHECK(t2.triangles.size() == 2);
    CHECK(t2.exterior_edges.size() == 4);

    CHECK_THROWS_AS(delaunay(std::vector<Point2>{{0, 0}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(delaunay(std::vector<Point2>{{0, 0}, {1, 1}, {2, 2}, {3, 3}}),
                    std::invalid_argument);

    // Duplicates collapse before triangulating.
    const std::vector<Point2> dup{{0, 0}, {0, 0}, {1, 0}, {0.5, 1}, {0.5, 1}};
    CHECK(delaunay(dup).vertices.size() == 3);
}

TEST_CASE("delaunay satisfies brute-force empty circumcircle") {
    std::mt19937_64 rng(101);
    for (int it = 0; it < 40; ++it) {
        const int n = 20 + static_cast<int>(180 * std::uniform_real_distribution<double>(0, 1)(rng));
        const auto pts = oracles::random_points(rng, n, 0.0, 10.0);
        const auto tri = delaunay(pts);
        CHECK(oracles::circumcircle_violations(tri.vertices, tri.triangles, kEpsCirc) == 0);
        for (const auto& t : tri.triangles) {
            CHECK(oracles::orient(tri.vertices[t[0]], tri.vertices[t[1]], tri.vertices[t[2]]) > 0);
        }
    }
}

TEST_CASE("delaunay handles lattices with cocircular quads") {
    std::vector<Point2> pts;
    for (int x = 0; x < 12; ++x) {
        for (int y = 0; y < 12; ++y) pts.push_back({0.5 * x, 0.5 * y});
    }
    const auto tri = delaunay(pts);
    CHECK(oracles::circumcircle_violations(tri.vertices, tri.triangles, kEpsCirc) == 0);
    // 11x11 cells, two triangles each.
    CHECK(tri.triangles.size() == 2 * 11 * 11);
}

namespace {

std::vector<LabeledNode> as_nodes(const std::vector<Point2>& pts,
                                  NodeLabel label = NodeLabel::Successful) {
    std::vector<LabeledNode> nodes(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) nodes[i] = {pts[i], label};
    return nodes;
}

std::vector<Point2> hull_points(const ConcaveHull& hull) {
    std::vector<Point2> out;
    for (const auto& node : hull.boundary) out.push_back(node.position);
    return out;
}

void check_hull_properties(const ConcaveHull& hull, const std::vector<Point2>& inputs, double R) {
    const auto poly = hull_points(hull);
    CHECK(oracles::polygon_is_simple(poly));
    for (int e = 0; e < hull.size(); ++e) {
        if (!hull.edge_removal_blocked[e]) CHECK(hull.edge_length(e) <= R + 1e-9);
    }
    for (const auto& p : inputs) CHECK(point_in_polygon(p, poly));
    // Counter-clockwise.
    double area2 = 0.0;
    for (size_t i = 0; i < poly.size(); ++i) {
        area2 += cross(poly[i], poly[(i + 1) % poly.size()]);
    }
    CHECK(area2 > 0.0);
}

}  // namespace

TEST_CASE("concave_hull triangle stays put") {
    const std::vector<Point2> tri{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
    const auto hull = concave_hull(as_nodes(tri), 2.0);
    CHECK(hull.size() == 3);
    check_hull_properties(hull, tri, 2.0);
    CHECK_THROWS_AS(concave_hull(as_nodes(tri), 0.0), std::invalid_argument);
}

TEST_CASE("concave_hull square plus center, R below side length") {
    // Four unit-square corners with a center point and R = 0.9. The first
    // peel removes one corner triangle and exposes the center; every later
    // removal would pinch the polygon at the center vertex, so exactly one
    // side is removed and three blocked sides of length 1 remain.
    const std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    const auto hull = concave_hull(as_nodes(pts), 0.9);
    CHECK(hull.size() == 5);
    check_hull_properties(hull, pts, 0.9);
    int blocked = 0, long_edges = 0;
    for (int e = 0; e < hull.size(); ++e) {
        if (hull.edge_removal_blocked[e]) ++blocked;
        if (hull.edge_length(e) > 0.9) ++long_edges;
    }
    CHECK(blocked == 3);
    CHECK(long_edges == 3);
}

TEST_CASE("concave_hull follows a notch") {
    // 20x20 lattice at 0.5 spacing with a 6x14 notch removed from the top
    // edge. R = 1.0 lets the peel dig into the notch.
    std::vector<Point2> pts;
    for (int x = 0; x < 20; ++x) {
        for (int y = 0; y < 20; ++y) {
            if (x >= 7 && x < 13 && y >= 6) continue;
            pts.push_back({0.5 * x, 0.5 * y});
        }
    }
    const auto hull = concave_hull(as_nodes(pts), 1.0);
    check_hull_properties(hull, pts, 1.0);
    for (int e = 0; e < hull.size(); ++e) CHECK(hull.edge_length(e) <= 1.0 + 1e-9);
    // The boundary must dip into the notch: some vertex lies well inside
    // the convex footprint.
    bool dips = false;
    for (const auto& node : hull.boundary) {
        if (node.position.x > 3.4 && node.position.x < 6.1 && node.position.y < 9.0) dips = true;
    }
    CHECK(dips);
}

TEST_CASE("concave_hull with infinite R equals convex hull") {
    std::mt19937_64 rng(202);
    for (int it = 0; it < 100; ++it) {
        const int n = 10 + static_cast<int>(120 * std::uniform_real_distribution<double>(0, 1)(rng));
        const auto pts = oracles::random_points(rng, n, -5.0, 5.0);
        const auto hull = concave_hull(as_nodes(pts), std::numeric_limits<double>::infinity());
        const auto reference = oracles::convex_hull(pts);
        std::set<std::pair<double, double>> got, want;
        for (const auto& node : hull.boundary) got.insert({node.position.x, node.position.y});
        for (const auto& p : reference) want.insert({p.x, p.y});
        CHECK(got == want);
    }
}

TEST_CASE("concave_hull properties independent of tie order") {
    // Permuting the input changes the lexicographic tie-break order; the
    // resulting polygons must all satisfy the same properties.
    std::mt19937_64 rng(303);
    for (int it = 0; it < 30; ++it) {
        auto pts = oracles::random_points(rng, 60, 0.0, 6.0);
        const double R = 1.5;
        for (int perm = 0; perm < 3; ++perm) {
            std::shuffle(pts.begin(), pts.end(), rng);
            const auto hull = concave_hull(as_nodes(pts), R);
            check_hull_properties(hull, pts, R);
        }
    }
}

TEST_CASE("dedup_nodes keeps the strongest label") {
    const std::vector<LabeledNode> nodes{
        {{1.0, 1.0}, NodeLabel::Successful},
        {{1.0, 1.0}, NodeLabel::Occupied},
        {{2.0, 2.0}, NodeLabel::Unknown},
        {{2.0, 2.0}, NodeLabel::BeyondWindow},
    };
    const auto merged = dedup_nodes(nodes);
    REQUIRE(merged.size() == 2);
    CHECK(merged[0].label == NodeLabel::Occupied);
    CHECK(merged[1].label == NodeLabel::Unknown);
}

TEST_CASE("filter_hull keeps an all-impassable boundary") {
    const std::vector<Point2> square{{0, 0}, {3, 0}, {3, 3}, {0, 3}};
    auto hull = concave_hull(as_nodes(square, NodeLabel::Occupied), 10.0);
    const auto filtered = filter_hull(hull, 0.5);
    CHECK(filtered.size() == hull.size());
    CHECK_FALSE(filtered.filter_warning);
}

TEST_CASE("filter_hull drops a lone narrow passable node") {
    // Boundary ... occupied, successful, occupied ... where the successful
    // node's two incident edges span 0.4 m and the robot needs 1.0 m.
    ConcaveHull hull;
    hull.boundary = {
        {{0.0, 0.0}, NodeLabel::Occupied},   {{1.0, 0.0}, NodeLabel::Occupied},
        {{1.2, 0.05}, NodeLabel::Successful}, {{1.4, 0.0}, NodeLabel::Occupied},
        {{2.4, 0.0}, NodeLabel::Occupied},   {{1.2, 1.5}, NodeLabel::Occupied},
    };
    hull.edge_passable.assign(6, false);
    hull.edge_removal_blocked.assign(6, false);
    const double span = dist({1.0, 0.0}, {1.2, 0.05}) + dist({1.2, 0.05}, {1.4, 0.0});
    REQUIRE(span < 1.0);

    const auto filtered = filter_hull(hull, 0.5);
    CHECK(filtered.size() == 5);
    for (const auto& node : filtered.boundary) CHECK(node.label == NodeLabel::Occupied);
}

TEST_CASE("filter_hull enforces the minimum passable span and is idempotent") {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int it = 0; it < 200; ++it) {
        // Random circular boundary with random labels.
        const int n = 6 + static_cast<int>(uni(rng) * 30);
        ConcaveHull hull;
        for (int i = 0; i < n; ++i) {
            const double a = 2.0 * M_PI * i / n;
            const double r = 2.0 + uni(rng);
            NodeLabel label;
            const double pick = uni(rng);
            if (pick < 0.45) label = NodeLabel::Occupied;
            else if (pick < 0.8) label = NodeLabel::Successful;
            else if (pick < 0.9) label = NodeLabel::Unknown;
            else label = NodeLabel::BeyondWindow;
            hull.boundary.push_back({{r * std::cos(a), r * std::sin(a)}, label});
        }
        hull.edge_passable.assign(n, false);
        hull.edge_removal_blocked.assign(n, false);

        const double robot = 0.2 + 0.4 * uni(rng);
        const auto filtered = filter_hull(hull, robot);
        if (filtered.filter_warning) continue;

        // Re-scan: every maximal passable run must now span >= 2 * robot.
        const int m = filtered.size();
        bool any_impassable = false;
        for (const auto& node : filtered.boundary) {
            any_impassable |= !is_passable_label(node.label);
        }
        if (!any_impassable) continue;
        for (int i = 0; i < m; ++i) {
            if (is_passable_label(filtered.boundary[i].label)) continue;
            int j = (i + 1) % m;
            double span = 0.0;
            int k = i, run = 0;
            while (is_passable_label(filtered.boundary[j].label)) {
                span += dist(filtered.boundary[k].position, filtered.boundary[j].position);
                k = j;
                j = (j + 1) % m;
                ++run;
            }
            span += dist(filtered.boundary[k].position, filtered.boundary[j].position);
            if (run > 0) CHECK(span >= 2.0 * robot);
        }

        const auto twice = filter_hull(filtered, robot);
        REQUIRE(twice.size() == filtered.size());
        for (int i = 0; i < twice.size(); ++i) {
            CHECK(twice.boundary[i].position == filtered.boundary[i].position);
            CHECK(twice.boundary[i].label == filtered.boundary[i].label);
        }
    }
}
