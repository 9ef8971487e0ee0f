#pragma once

#include <optional>
#include <unordered_map>
#include <random>
#include <vector>

#include "hullgain/geom.hpp"
#include "hullgain/grid.hpp"

namespace hullgain::rrg {

struct RrgNode {
    int id = 0;
    geom::Point2 position;
    // Latest volumetric assessment; doubles as the stored candidate gain
    // for global relocation (the relocation score re-applies the distance
    // discount, so the stored value must not bake one in).
    int volumetric_gain = 0;
    double exploration_gain = 0.0;
    bool visited = false;
    int parent = -1;  // steering source at creation, -1 for the root
};

struct RrgEdge {
    int a = 0;
    int b = 0;
    double length = 0.0;
};

struct Rrg {
    std::vector<RrgNode> nodes;  // node ids equal their index
    std::vector<RrgEdge> edges;
    int root = -1;

    static Rrg with_root(const geom::Point2& pose);

    void add_edge(int a, int b);
    std::vector<std::vector<std::pair<int, double>>> adjacency() const;

    /// Dijkstra from `from`; returns (distance, predecessor) per node.
    struct ShortestPaths {
        std::vector<double> dist;
        std::vector<int> pred;
    };
    ShortestPaths shortest_paths(int from) const;

    int nearest(const geom::Point2& p) const;
    bool connected() const;
};

struct SlidingWindow {
    geom::Point2 center;
    double half_extent = 0.0;

    bool contains(const geom::Point2& p) const {
        return std::abs(p.x - center.x) <= half_extent && std::abs(p.y - center.y) <= half_extent;
    }
    SlidingWindow inflated(double margin) const { return {center, half_extent + margin}; }
};

/// Expansion-failure nodes; never holds Successful labels. Markers are
/// deduplicated on a fine grid, keeping the strongest label per cell;
/// repeat failures at the same spot carry no extra information. Each
/// marker remembers the label it was recorded with, so a marker relabeled
/// BeyondWindow while the window is elsewhere recovers its meaning when
/// the window returns.
struct FailureSet {
    std::vector<geom::LabeledNode> nodes;  // effective labels

    void add(const geom::Point2& p, geom::NodeLabel label);
    geom::NodeLabel original(int i) const { return originals_[i]; }

    /// Used by pruning: insert with distinct recorded/effective labels.
    void add_pruned(const geom::Point2& p, geom::NodeLabel original, geom::NodeLabel effective);

    static constexpr double kDedupRes = 0.125;

private:
    std::vector<geom::NodeLabel> originals_;
    std::unordered_map<long long, int> index_;
};

struct ExpandParams {
    double step_size = 1.0;
    double connect_radius = 2.0;
    int n_samples = 300;
    // Candidates closer than this to an existing node are skipped, which
    // caps densification and lets expansion saturate in covered space.
    double min_node_separation = 0.5;
};

struct ExpandStats {
    int added = 0;
    int occupied_failures = 0;
    int unknown_failures = 0;
    int beyond_window_failures = 0;
    int skipped = 0;
};

/// One sampling batch. Each attempt samples in the window, steers from the
/// nearest node and either records a failure (first blocking cell decides
/// Occupied vs Unknown, then the window test) or adds the candidate with a
/// tree edge plus graph edges to visible nodes within connect_radius.
ExpandStats expand(Rrg& rrg, FailureSet& fail, const grid::OccupancyGrid& grid,
                   const SlidingWindow& window, const ExpandParams& params,
                   std::mt19937_64& rng);

/// Union of RRG nodes (as Successful) and failure nodes, one representative
/// per downsample cell, labels merged by priority Occupied > Successful >
/// Unknown > BeyondWindow. Output is ordered by cell for determinism.
std::vector<geom::LabeledNode> build_vch(const Rrg& rrg, const FailureSet& fail,
                                         double downsample_res);

struct PruneResult {
    Rrg rrg;
    FailureSet fail;
    std::vector<int> id_map;  // old node id -> new id, -1 if dropped
};

/// Window update bookkeeping. Everything beyond the margin-inflated window
/// is cut away; within the margin band nodes carry the BeyondWindow label
/// (graph nodes turn into markers there); inside the window proper,
/// markers recorded as Occupied keep that label and everything else is
/// dropped for rediscovery by fresh expansion. The graph keeps only the
/// in-window component still connected to new_root.
PruneResult prune_on_window_update(const Rrg& rrg, const FailureSet& fail,
                                   const SlidingWindow& new_window, double margin, int new_root);

/// Merge `local` into `global`: coincident nodes deduplicate (visited flags
/// or-ed, gains overwritten by the local graph's fresher assessment), edges
/// union. If the graphs share no node, the local root is tied to the
/// nearest global node within connect_radius; throws when that is
/// impossible.
Rrg merge_into_global(const Rrg& local, const Rrg& global, double connect_radius);

/// Window-restricted connected component of `global` around `entry`,
/// re-rooted there with fresh ids: the viewpoints a new local stage resumes
/// from. Falls back to a bare root at entry_pose when entry is -1.
Rrg local_from_global(const Rrg& global, int entry, const geom::Point2& entry_pose,
                      const SlidingWindow& window);

}  // namespace hullgain::rrg
