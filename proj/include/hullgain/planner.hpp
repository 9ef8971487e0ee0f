#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hullgain/gain.hpp"
#include "hullgain/geom.hpp"
#include "hullgain/grid.hpp"
#include "hullgain/rrg.hpp"
#include "hullgain/sim.hpp"

namespace hullgain::planner {

enum class Stage { Local, Relocating, Done };
enum class GainVariant { UnknownGain, GraphGain };

const char* to_string(Stage stage);
const char* to_string(GainVariant variant);

struct PlannerParams {
    rrg::ExpandParams expand;
    gain::GainParams gain;
    double window_half_extent = 15.0;
    double margin = 2.0;           // prune range beyond the window
    double robot_size = 0.6;
    double downsample_res = 0.5;
    int n_stall = 2;
    int n_beams = 360;
    double sensor_range = 8.0;
    long step_budget = 50000;
};

struct ExplorationState {
    Stage stage = Stage::Local;
    geom::Point2 robot_pose;
    rrg::Rrg local_rrg;
    rrg::Rrg global_rrg;
    // Transient markers: frontier (Unknown) and beyond-window failures,
    // pruned as the window moves. Obstacle markers are permanent facts and
    // live in their own store.
    rrg::FailureSet fail;
    rrg::SlidingWindow window;
    int stall_count = 0;
    geom::Point2 prev_branch_dir{1.0, 0.0};
};

struct StepRecord {
    int iteration = 0;
    long sim_steps = 0;
    Stage stage = Stage::Local;
    geom::Point2 pose;
    double coverage = 0.0;
    double best_gain = 0.0;
    int selected = -1;
    int rrg_nodes = 0;
    int hull_size = 0;
    // Wall-clock phase timings; excluded from deterministic artifacts.
    double hull_build_s = 0.0;
    double gain_update_s = 0.0;
    double baseline_s = 0.0;
};

struct RelocationRecord {
    int iteration = 0;
    geom::Point2 target;
    double path_length = 0.0;
};

struct TransitionRecord {
    int iteration = 0;
    Stage from = Stage::Local;
    Stage to = Stage::Local;
};

struct ExplorationLog {
    std::vector<StepRecord> steps;
    std::vector<RelocationRecord> relocations;
    std::vector<TransitionRecord> transitions;
    bool incomplete = false;
    double coverage = 0.0;
    long sim_steps = 0;
    double distance_traveled = 0.0;
    int iterations = 0;
    double wall_time_s = 0.0;  // volatile, kept out of the summary artifact
};

/// The exploration loop: local expansion with sliding windows, stall
/// detection, merge into the global graph and relocation to remembered
/// candidates.
class Exploration {
public:
    Exploration(sim::World world, const PlannerParams& params, GainVariant variant,
                std::uint64_t seed);

    /// One local iteration: expand, build the hull, score gains, pick the
    /// best viewpoint and advance one graph edge toward it (scanning along
    /// the way), recentering the window when the robot strays.
    StepRecord local_step();

    /// Stall bookkeeping; after n_stall consecutive sub-threshold windows
    /// the local graph merges into the global one and the stage flips to
    /// Relocating.
    void check_stall();

    /// Travel to the best remembered candidate through the global graph,
    /// or finish when none are left.
    void relocate();

    ExplorationLog run_to_completion();

    /// Gain table for the current state; recomputes whichever gain column
    /// the driving variant skipped when `fill_both` is set.
    gain::GainReport gain_report(bool fill_both);

    const ExplorationState& state() const { return state_; }
    const grid::OccupancyGrid& map() const { return grid_; }
    const sim::World& world() const { return world_; }
    const geom::ConcaveHull& last_hull() const { return last_hull_; }
    bool has_hull() const { return last_hull_.size() >= 3; }
    const PlannerParams& params() const { return params_; }
    GainVariant variant() const { return variant_; }
    double coverage() const;
    long sim_steps() const { return sim_steps_; }
    int iteration() const { return iteration_; }

    /// When set, both gain variants are computed and timed every iteration
    /// (selection still follows the driving variant).
    void set_measure_both(bool value) { measure_both_ = value; }

    /// The failure-node view the current hull is built from.
    rrg::FailureSet stage_fail_view() const { return assemble_stage_fail(); }

    /// Called after every local iteration; used by the CLI for frames.
    std::function<void(const Exploration&, const StepRecord&)> on_step;

    ExplorationLog log;

private:
    void integrate_pose_scan();
    void move_along(const geom::Point2& from, const geom::Point2& to);
    void move_to_node(int node_id, const rrg::Rrg& graph);
    void recenter_window_if_needed();
    void enter_window();
    void merge_local_into_global();
    void score_exploration_gains();
    int robot_global_node() const;
    void record_failures(rrg::FailureSet&& batch);
    /// The V_ch failure view for the current window: permanent obstacle
    /// markers inside the pruned range, transient frontier/beyond markers,
    /// and the global graph's margin-band viewpoints as beyond-window
    /// wraps.
    rrg::FailureSet assemble_stage_fail() const;

    sim::World world_;
    PlannerParams params_;
    GainVariant variant_;
    grid::OccupancyGrid grid_;
    ExplorationState state_;
    std::mt19937_64 rng_;
    geom::ConcaveHull last_hull_;
    std::vector<int> last_unknown_gain_;
    std::vector<int> last_graph_gain_;
    bool last_select_exhausted_ = false;
    bool measure_both_ = false;
    std::vector<bool> reachable_;
    int reachable_count_ = 0;
    long sim_steps_ = 0;
    int iteration_ = 0;
    double distance_traveled_ = 0.0;
    gain::GainStats gain_stats_;

    // Obstacle-collision markers are facts about a static world; they are
    // never forgotten, only viewed through the current window.
    struct OccStore {
        std::vector<geom::Point2> points;
        std::unordered_map<long long, int> dedup;
        std::unordered_map<long long, std::vector<int>> buckets;  // coarse cells
        static constexpr double kBucket = 2.0;

        void add(const geom::Point2& p);
        std::vector<int> in_window(const rrg::SlidingWindow& win) const;
    };
    OccStore occ_;
};

}  // namespace hullgain::planner
