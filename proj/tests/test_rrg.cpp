#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "hullgain/gain.hpp"
#include "hullgain/rrg.hpp"
#include "hullgain/sim.hpp"

using namespace hullgain;
using geom::NodeLabel;
using geom::Point2;
using rrg::ExpandParams;
using rrg::FailureSet;
using rrg::Rrg;
using rrg::SlidingWindow;

namespace {

grid::OccupancyGrid uniform_grid(int w, int h, double res, grid::CellState state) {
    grid::OccupancyGrid g(res, {0, 0}, w, h);
    if (state != grid::CellState::Unknown) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) g.set({x, y}, state);
        }
    }
    return g;
}

}  // namespace

TEST_CASE("expand in free space records no obstacle or frontier failures") {
    auto g = uniform_grid(100, 100, 0.2, grid::CellState::Free);
    auto graph = Rrg::with_root({10.0, 10.0});
    FailureSet fail;
    std::mt19937_64 rng(1);
    const SlidingWindow window{{10.0, 10.0}, 8.0};
    ExpandParams params;
    const auto stats = rrg::expand(graph, fail, g, window, params, rng);
    CHECK(stats.added > 50);
    CHECK(stats.occupied_failures == 0);
    CHECK(stats.unknown_failures == 0);
    for (const auto& node : fail.nodes) CHECK(node.label == NodeLabel::BeyondWindow);
    // Every successful node is connected and has free line of sight to its
    // parent.
    CHECK(graph.connected());
    for (const auto& node : graph.nodes) {
        if (node.parent >= 0) {
            CHECK(grid::is_line_free(g, graph.nodes[node.parent].position, node.position));
        }
        CHECK(window.contains(node.position));
    }
}

TEST_CASE("expand cannot cross a wall") {
    auto g = uniform_grid(100, 100, 0.2, grid::CellState::Free);
    for (int y = 0; y < 100; ++y) {
        for (int x = 50; x < 53; ++x) g.set({x, y}, grid::CellState::Occupied);
    }
    auto graph = Rrg::with_root({5.0, 10.0});
    FailureSet fail;
    std::mt19937_64 rng(2);
    const SlidingWindow window{{10.0, 10.0}, 9.9};
    ExpandParams params;
    int occupied = 0;
    for (int batch = 0; batch < 6; ++batch) {
        occupied += rrg::expand(graph, fail, g, window, params, rng).occupied_failures;
    }
    CHECK(occupied > 0);
    for (const auto& node : graph.nodes) CHECK(node.position.x < 10.0);
}

TEST_CASE("expand labels frontier attempts as unknown") {
    // Left half mapped free, right half unmapped.
    grid::OccupancyGrid g(0.2, {0, 0}, 100, 100);
    for (int y = 0; y < 100; ++y) {
        for (int x = 0; x < 50; ++x) g.set({x, y}, grid::CellState::Free);
    }
    auto graph = Rrg::with_root({5.0, 10.0});
    FailureSet fail;
    std::mt19937_64 rng(3);
    const SlidingWindow window{{10.0, 10.0}, 9.9};
    ExpandParams params;
    for (int batch = 0; batch < 4; ++batch) rrg::expand(graph, fail, g, window, params, rng);

    int unknown = 0;
    for (const auto& node : fail.nodes) {
        if (node.label != NodeLabel::Unknown) continue;
        ++unknown;
        // An unknown failure must be explained by unmapped space within a
        // step of its position, and never sits deep inside the mapped half.
        CHECK(node.position.x > 10.0 - params.step_size - 1e-9);
    }
    CHECK(unknown > 0);
    for (const auto& node : graph.nodes) {
        CHECK(g.at(g.cell_at(node.position)) == grid::CellState::Free);
    }
}

TEST_CASE("expand records beyond-window candidates") {
    auto g = uniform_grid(100, 100, 0.2, grid::CellState::Free);
    // Wall at x in [11.5, 12) keeps the tree away from the window's right
    // edge, so samples near it keep steering from the outside node.
    for (int y = 0; y < 100; ++y) {
        for (int x = 57; x < 60; ++x) g.set({x, y}, grid::CellState::Occupied);
    }
    auto graph = Rrg::with_root({10.0, 10.0});
    graph.nodes.push_back({1, {14.5, 10.0}, 0, 0.0, false, 0});
    graph.add_edge(0, 1);
    FailureSet fail;
    std::mt19937_64 rng(4);
    const SlidingWindow window{{8.0, 10.0}, 5.0};
    ExpandParams params;
    for (int batch = 0; batch < 4; ++batch) rrg::expand(graph, fail, g, window, params, rng);
    int beyond = 0;
    for (const auto& node : fail.nodes) {
        if (node.label == NodeLabel::BeyondWindow) {
            ++beyond;
            CHECK_FALSE(window.contains(node.position));
        }
    }
    CHECK(beyond > 0);
}

TEST_CASE("build_vch downsampling") {
    Rrg graph = Rrg::with_root({0.0, 0.0});
    graph.nodes.push_back({1, {5.0, 5.0}, 0, 0.0, false, 0});
    graph.nodes.push_back({2, {9.0, 1.0}, 0, 0.0, false, 0});
    FailureSet fail;
    const auto identity = rrg::build_vch(graph, fail, 0.5);
    CHECK(identity.size() == 3);

    fail.add({5.0, 5.0}, NodeLabel::Occupied);
    const auto merged = rrg::build_vch(graph, fail, 0.5);
    CHECK(merged.size() == 3);
    int occupied = 0;
    for (const auto& node : merged) occupied += node.label == NodeLabel::Occupied ? 1 : 0;
    CHECK(occupied == 1);

    // Bucket-count oracle on random clusters.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int it = 0; it < 50; ++it) {
        Rrg r = Rrg::with_root({u(rng), u(rng)});
        FailureSet f;
        for (int k = 0; k < 100; ++k) {
            const Point2 p{u(rng), u(rng)};
            if (k % 2 == 0) {
                r.nodes.push_back({static_cast<int>(r.nodes.size()), p, 0, 0.0, false, 0});
            } else {
                f.add(p, NodeLabel::Unknown);
            }
        }
        const double res = 1.0;
        std::set<std::pair<long, long>> cells;
        for (const auto& node : r.nodes) {
            cells.insert({static_cast<long>(std::floor(node.position.x / res)),
                          static_cast<long>(std::floor(node.position.y / res))});
        }
        for (const auto& node : f.nodes) {
            cells.insert({static_cast<long>(std::floor(node.position.x / res)),
                          static_cast<long>(std::floor(node.position.y / res))});
        }
        CHECK(rrg::build_vch(r, f, res).size() == cells.size());
    }
}

TEST_CASE("prune_on_window_update applies the relabel rules") {
    Rrg graph = Rrg::with_root({0.0, 0.0});
    graph.nodes.push_back({1, {3.0, 0.0}, 0, 0.0, false, 0});
    graph.nodes.push_back({2, {6.0, 0.0}, 0, 0.0, false, 1});   // margin band
    graph.nodes.push_back({3, {20.0, 0.0}, 0, 0.0, false, 2});  // beyond: cut
    graph.add_edge(0, 1);
    graph.add_edge(1, 2);
    graph.add_edge(2, 3);
    FailureSet fail;
    fail.add({1.0, 1.0}, NodeLabel::Occupied);      // inside: kept
    fail.add({1.0, -1.0}, NodeLabel::Unknown);      // inside: dropped
    fail.add({2.0, 2.0}, NodeLabel::BeyondWindow);  // stale marker inside: dropped
    fail.add({6.0, 3.0}, NodeLabel::Occupied);      // band: beyond-window label
    fail.add({25.0, 0.0}, NodeLabel::Occupied);     // beyond the pruned range: cut
    fail.add({25.0, 5.0}, NodeLabel::Unknown);      // beyond the pruned range: cut

    const SlidingWindow window{{0.0, 0.0}, 5.0};
    const auto pruned = rrg::prune_on_window_update(graph, fail, window, 2.0, 0);

    // Graph keeps the two in-window nodes; the band node becomes a marker
    // and the far node is cut entirely.
    CHECK(pruned.rrg.nodes.size() == 2);
    CHECK(pruned.id_map[0] == 0);
    CHECK(pruned.id_map[2] == -1);
    CHECK(pruned.id_map[3] == -1);
    int occupied_inside = 0, beyond = 0, unknown = 0;
    for (const auto& node : pruned.fail.nodes) {
        if (node.label == NodeLabel::Occupied) ++occupied_inside;
        if (node.label == NodeLabel::BeyondWindow) ++beyond;
        if (node.label == NodeLabel::Unknown) ++unknown;
    }
    CHECK(occupied_inside == 1);
    CHECK(unknown == 0);
    CHECK(beyond == 2);  // banded occupied marker + banded graph node

    // A marker banded as BeyondWindow recovers its recorded label when the
    // window comes back.
    const SlidingWindow back{{4.0, 1.0}, 5.0};
    const auto restored = rrg::prune_on_window_update(pruned.rrg, pruned.fail, back, 2.0, 0);
    bool band_restored = false;
    for (const auto& node : restored.fail.nodes) {
        if (std::abs(node.position.x - 6.0) < 1e-9 && std::abs(node.position.y - 3.0) < 1e-9) {
            band_restored = node.label == NodeLabel::Occupied;
        }
    }
    CHECK(band_restored);

    // Unchanged window: only unknown and stale markers disappear.
    Rrg small = Rrg::with_root({0.0, 0.0});
    FailureSet f2;
    f2.add({1.0, 1.0}, NodeLabel::Occupied);
    f2.add({1.0, 2.0}, NodeLabel::Unknown);
    const auto again = rrg::prune_on_window_update(small, f2, window, 2.0, 0);
    REQUIRE(again.fail.nodes.size() == 1);
    CHECK(again.fail.nodes[0].label == NodeLabel::Occupied);
    CHECK(again.rrg.nodes.size() == 1);
}

TEST_CASE("merge_into_global basics") {
    Rrg local = Rrg::with_root({0.0, 0.0});
    local.nodes.push_back({1, {1.0, 0.0}, 0, 0.0, false, 0});
    local.add_edge(0, 1);

    const Rrg merged = rrg::merge_into_global(local, Rrg{}, 2.0);
    CHECK(merged.nodes.size() == 2);
    CHECK(merged.edges.size() == 1);

    const Rrg twice = rrg::merge_into_global(local, merged, 2.0);
    CHECK(twice.nodes.size() == 2);
    CHECK(twice.edges.size() == 1);
}

TEST_CASE("chained merges along a corridor stay connected") {
    Rrg global;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    Point2 anchor{0.0, 0.0};
    for (int segment = 0; segment < 6; ++segment) {
        Rrg local = Rrg::with_root(anchor);
        for (int k = 1; k <= 8; ++k) {
            const Point2 p{anchor.x + k * 0.9, anchor.y + jitter(rng)};
            local.nodes.push_back({k, p, 0, 0.0, false, k - 1});
            local.add_edge(k - 1, k);
        }
        global = rrg::merge_into_global(local, global, 2.0);
        CHECK(global.connected());
        anchor = local.nodes.back().position;  // next window stitches here
    }
    CHECK(global.nodes.size() > 40);
}

TEST_CASE("fully enclosed room ends up wrapped by failure nodes") {
    // Map a small closed room completely, expand to saturation, then check
    // the filtered hull has no passable gap the robot could fit through.
    sim::World world(0.2, 40, 40);  // 8 m x 8 m
    world.set_spawn({4.0, 4.0});
    auto g = world.make_grid();
    grid::integrate_scan(g, world.spawn(), sim::sense(world, world.spawn(), 720, 12.0));

    auto graph = Rrg::with_root(world.spawn());
    FailureSet fail;
    std::mt19937_64 rng(7);
    const SlidingWindow window{world.spawn(), 15.0};
    ExpandParams params;
    int quiet = 0;
    for (int batch = 0; batch < 60 && quiet < 2; ++batch) {
        quiet = rrg::expand(graph, fail, g, window, params, rng).added == 0 ? quiet + 1 : 0;
    }
    CHECK(quiet >= 2);

    const auto vch = rrg::build_vch(graph, fail, 0.5);
    const double robot_size = 0.6;
    const auto hull = geom::concave_hull(vch, 2.0 * robot_size);
    const auto filtered = geom::filter_hull(hull, robot_size);
    const int m = filtered.size();
    for (int i = 0; i < m; ++i) {
        if (geom::is_passable_label(filtered.boundary[i].label)) continue;
        int j = (i + 1) % m;
        double span = 0.0;
        int k = i, run = 0;
        while (geom::is_passable_label(filtered.boundary[j].label)) {
            span += geom::dist(filtered.boundary[k].position, filtered.boundary[j].position);
            k = j;
            j = (j + 1) % m;
            ++run;
        }
        span += geom::dist(filtered.boundary[k].position, filtered.boundary[j].position);
        if (run > 0) CHECK(span < 2.0 * robot_size);
    }
    // And the failure set never holds successful labels.
    for (const auto& node : fail.nodes) CHECK(node.label != NodeLabel::Successful);
}
