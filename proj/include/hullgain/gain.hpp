#pragma once

#include <atomic>
#include <optional>
#include <vector>

#include "hullgain/geom.hpp"
#include "hullgain/grid.hpp"
#include "hullgain/rrg.hpp"

namespace hullgain::gain {

/// Which hull-edge endpoint labels let a voxel count as gain. `Both`
/// follows the stricter rule (both endpoints passable); `Any` accepts one.
enum class EdgeRule { Both, Any };

struct GainParams {
    double lambda = 0.5;    // 1/m, per-edge distance discount
    double lambda1 = 0.5;   // branch-direction penalty
    double lambda2 = 0.2;   // 1/m, cumulative distance discount
    double gain_radius = 8.0;
    EdgeRule edge_rule = EdgeRule::Both;
    double gain_threshold = 5.0;  // "sufficiently high" exploration gain
};

struct GainStats {
    // Voxels judged outside the hull for which no crossing edge was found.
    long long no_crossing = 0;
};

struct GainReportRow {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    int unknown_gain = 0;
    int graph_gain = 0;
    double exploration_gain = 0.0;
};

/// Per-node gain table plus phase timings, one per planner iteration or
/// checkpoint.
struct GainReport {
    std::vector<GainReportRow> rows;
    double hull_build_s = 0.0;
    double gain_update_s = 0.0;
    double baseline_s = 0.0;
};

/// Does the segment voxel->node cross the hull through a passable edge?
/// All properly crossing edges are collected with the strict sign tests;
/// the one whose intersection lies nearest the node decides via its
/// endpoint labels. Returns false (and counts the event) when no edge
/// crosses at all.
bool check_intersection(const geom::ConcaveHull& hull, const geom::Point2& node,
                        const geom::Point2& voxel, EdgeRule rule = EdgeRule::Both,
                        GainStats* stats = nullptr);

/// Concave-hull volumetric gain: per RRG node, the number of map-resolution
/// voxel centers within gain_radius that lie outside the hull and pass
/// check_intersection. Results are also written to the nodes'
/// volumetric_gain fields.
std::vector<int> graph_gain(const geom::ConcaveHull& hull, rrg::Rrg& rrg,
                            const grid::OccupancyGrid& grid, const GainParams& params,
                            GainStats* stats = nullptr);

struct BranchNode {
    geom::Point2 position;
    double volumetric_gain = 0.0;
};

/// E(v_k) = E(v_{k-1}) + V(v_k) * exp(-lambda * dis(v_{k-1}, v_k)), with
/// E(root) = V(root). Returns the value at every branch node.
std::vector<double> exploration_gain_nbvp(const std::vector<BranchNode>& branch,
                                          const GainParams& params);

/// E(v_k) = exp(-lambda1 * sim(branch, prev)) *
///          sum_i V(v_i) * exp(-lambda2 * dis(v_1, v_i)),
/// where sim is the angle between the branch's root-to-tip direction and
/// prev_branch_dir. Returns the tip value.
double exploration_gain_dsvp(const std::vector<BranchNode>& branch,
                             const geom::Point2& prev_branch_dir, const GainParams& params);

/// Highest-exploration-gain unvisited node; ties break on shorter path
/// distance from the root, then on smaller id. Returns nullopt when every
/// unvisited node scores below params.gain_threshold ("local stage
/// exhausted").
std::optional<int> select_best(const rrg::Rrg& rrg, const GainParams& params);

}  // namespace hullgain::gain
