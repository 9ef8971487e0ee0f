#include "hullgain/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace hullgain::planner {

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

const char* to_string(Stage stage) {
    switch (stage) {
        case Stage::Local: return "local";
        case Stage::Relocating: return "relocating";
        case Stage::Done: return "done";
    }
    return "?";
}

const char* to_string(GainVariant variant) {
    return variant == GainVariant::GraphGain ? "graph" : "unknown";
}

Exploration::Exploration(sim::World world, const PlannerParams& params, GainVariant variant,
                         std::uint64_t seed)
    : world_(std::move(world)),
      params_(params),
      variant_(variant),
      grid_(world_.make_grid()),
      rng_(seed) {
    world_.validate();
    state_.robot_pose = world_.spawn();
    state_.local_rrg = rrg::Rrg::with_root(state_.robot_pose);
    state_.local_rrg.nodes[0].visited = true;
    state_.window = {state_.robot_pose, params_.window_half_extent};
    reachable_ = sim::reachable_free(world_);
    reachable_count_ = 0;
    for (const bool b : reachable_) reachable_count_ += b ? 1 : 0;
    integrate_pose_scan();
}

double Exploration::coverage() const {
    if (reachable_count_ == 0) return 1.0;
    int known = 0;
    for (int y = 0; y < grid_.height(); ++y) {
        for (int x = 0; x < grid_.width(); ++x) {
            if (!reachable_[static_cast<size_t>(y) * grid_.width() + x]) continue;
            if (grid_.at({x, y}) == grid::CellState::Free) ++known;
        }
    }
    return static_cast<double>(known) / reachable_count_;
}

void Exploration::integrate_pose_scan() {
    grid::integrate_scan(grid_, state_.robot_pose,
                         sim::sense(world_, state_.robot_pose, params_.n_beams,
                                    params_.sensor_range));
}

void Exploration::move_along(const geom::Point2& from, const geom::Point2& to) {
    // Cell-by-cell waypoint following: one sim step and one scan per cell.
    const auto cells = grid::raycast(grid_, from, to);
    for (size_t i = 1; i < cells.size(); ++i) {
        state_.robot_pose = grid_.cell_center(cells[i]);
        ++sim_steps_;
        integrate_pose_scan();
    }
    state_.robot_pose = to;
    distance_traveled_ += geom::dist(from, to);
    integrate_pose_scan();
}

void Exploration::move_to_node(int node_id, const rrg::Rrg& graph) {
    move_along(state_.robot_pose, graph.nodes[node_id].position);
}

int Exploration::robot_global_node() const {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& node : state_.global_rrg.nodes) {
        const double d = geom::dist(node.position, state_.robot_pose);
        if (d < best_d) {
            best_d = d;
            best = node.id;
        }
    }
    return best;
}

void Exploration::merge_local_into_global() {
    state_.global_rrg =
        rrg::merge_into_global(state_.local_rrg, state_.global_rrg, params_.expand.connect_radius);
}

void Exploration::OccStore::add(const geom::Point2& p) {
    const auto cx = static_cast<long long>(std::floor(p.x / rrg::FailureSet::kDedupRes));
    const auto cy = static_cast<long long>(std::floor(p.y / rrg::FailureSet::kDedupRes));
    const long long key = cx * 1000003LL + cy;
    if (!dedup.emplace(key, static_cast<int>(points.size())).second) return;
    const auto bx = static_cast<long long>(std::floor(p.x / kBucket));
    const auto by = static_cast<long long>(std::floor(p.y / kBucket));
    buckets[bx * 1000003LL + by].push_back(static_cast<int>(points.size()));
    points.push_back(p);
}

std::vector<int> Exploration::OccStore::in_window(const rrg::SlidingWindow& win) const {
    std::vector<int> out;
    const auto bx0 = static_cast<long long>(std::floor((win.center.x - win.half_extent) / kBucket));
    const auto bx1 = static_cast<long long>(std::floor((win.center.x + win.half_extent) / kBucket));
    const auto by0 = static_cast<long long>(std::floor((win.center.y - win.half_extent) / kBucket));
    const auto by1 = static_cast<long long>(std::floor((win.center.y + win.half_extent) / kBucket));
    for (long long bx = bx0; bx <= bx1; ++bx) {
        for (long long by = by0; by <= by1; ++by) {
            const auto it = buckets.find(bx * 1000003LL + by);
            if (it == buckets.end()) continue;
            for (int idx : it->second) {
                if (win.contains(points[idx])) out.push_back(idx);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void Exploration::record_failures(rrg::FailureSet&& batch) {
    for (int i = 0; i < static_cast<int>(batch.nodes.size()); ++i) {
        const auto& node = batch.nodes[i];
        if (node.label == geom::NodeLabel::Occupied) {
            occ_.add(node.position);
        } else {
            state_.fail.add(node.position, node.label);
        }
    }
}

rrg::FailureSet Exploration::assemble_stage_fail() const {
    rrg::FailureSet view;
    const rrg::SlidingWindow keep = state_.window.inflated(params_.margin);
    for (int idx : occ_.in_window(keep)) {
        view.add(occ_.points[idx], geom::NodeLabel::Occupied);
    }
    for (const auto& node : state_.fail.nodes) view.add(node.position, node.label);
    // Global viewpoints in the margin band wrap the side the robot came
    // from; expansion cannot renew them because it is window-bounded.
    for (const auto& node : state_.global_rrg.nodes) {
        if (keep.contains(node.position) && !state_.window.contains(node.position)) {
            view.add(node.position, geom::NodeLabel::BeyondWindow);
        }
    }
    return view;
}

void Exploration::recenter_window_if_needed() {
    const geom::Point2 offset = state_.robot_pose - state_.window.center;
    if (std::abs(offset.x) <= params_.window_half_extent / 2.0 &&
        std::abs(offset.y) <= params_.window_half_extent / 2.0) {
        return;
    }
    // Keep the global graph complete before dropping local nodes.
    merge_local_into_global();
    enter_window();
}

void Exploration::enter_window() {
    const rrg::SlidingWindow next{state_.robot_pose, params_.window_half_extent};
    const int root = state_.local_rrg.nearest(state_.robot_pose);
    auto pruned =
        rrg::prune_on_window_update(state_.local_rrg, state_.fail, next, params_.margin, root);
    state_.fail = std::move(pruned.fail);

    // Resume from every known viewpoint inside the new window so the stage
    // re-assesses them instead of trusting stored gains.
    state_.local_rrg = rrg::local_from_global(state_.global_rrg, robot_global_node(),
                                              state_.robot_pose, next);
    state_.local_rrg.nodes[state_.local_rrg.root].visited = true;
    state_.window = next;
}

void Exploration::score_exploration_gains() {
    rrg::Rrg& graph = state_.local_rrg;
    const auto sp = graph.shortest_paths(graph.root);
    for (auto& node : graph.nodes) {
        if (node.visited || !std::isfinite(sp.dist[node.id])) {
            node.exploration_gain = 0.0;
            continue;
        }
        std::vector<int> chain;
        for (int cur = node.id; cur >= 0; cur = sp.pred[cur]) {
            chain.push_back(cur);
            if (cur == graph.root) break;
        }
        std::reverse(chain.begin(), chain.end());
        std::vector<gain::BranchNode> branch;
        branch.reserve(chain.size());
        for (int id : chain) {
            branch.push_back(
                {graph.nodes[id].position, static_cast<double>(graph.nodes[id].volumetric_gain)});
        }
        node.exploration_gain = gain::exploration_gain_dsvp(branch, state_.prev_branch_dir,
                                                            params_.gain);
    }
}

StepRecord Exploration::local_step() {
    StepRecord rec;
    rec.iteration = ++iteration_;
    rec.stage = state_.stage;
    ++sim_steps_;  // planning tick

    rrg::FailureSet batch;
    rrg::expand(state_.local_rrg, batch, grid_, state_.window, params_.expand, rng_);
    record_failures(std::move(batch));

    const bool need_hull = variant_ == GainVariant::GraphGain || measure_both_;
    const bool need_baseline = variant_ == GainVariant::UnknownGain || measure_both_;

    last_hull_ = geom::ConcaveHull{};
    if (need_hull) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto vch =
            rrg::build_vch(state_.local_rrg, assemble_stage_fail(), params_.downsample_res);
        if (vch.size() >= 3) {
            try {
                last_hull_ = geom::filter_hull(
                    geom::concave_hull(vch, 2.0 * params_.robot_size), params_.robot_size);
            } catch (const std::exception&) {
                // Degenerate early geometry; skip the hull this iteration.
                last_hull_ = geom::ConcaveHull{};
            }
        }
        rec.hull_build_s = seconds_since(t0);
    }

    auto& nodes = state_.local_rrg.nodes;
    last_graph_gain_.assign(nodes.size(), 0);
    last_unknown_gain_.assign(nodes.size(), 0);
    if (need_hull && has_hull()) {
        const auto t0 = std::chrono::steady_clock::now();
        last_graph_gain_ =
            gain::graph_gain(last_hull_, state_.local_rrg, grid_, params_.gain, &gain_stats_);
        rec.gain_update_s = seconds_since(t0);
    }
    if (need_baseline) {
        const auto t0 = std::chrono::steady_clock::now();
        for (const auto& node : nodes) {
            last_unknown_gain_[node.id] =
                grid::unknown_gain(grid_, node.position, params_.gain.gain_radius);
        }
        rec.baseline_s = seconds_since(t0);
    }
    // The driving variant decides what the planner sees as volumetric gain.
    for (auto& node : nodes) {
        node.volumetric_gain = variant_ == GainVariant::GraphGain ? last_graph_gain_[node.id]
                                                                  : last_unknown_gain_[node.id];
    }

    score_exploration_gains();
    const auto best = gain::select_best(state_.local_rrg, params_.gain);
    last_select_exhausted_ = !best.has_value();
    rec.rrg_nodes = static_cast<int>(nodes.size());
    rec.hull_size = last_hull_.size();

    if (best) {
        const int target = *best;
        rec.selected = target;
        rec.best_gain = nodes[target].exploration_gain;
        const auto sp = state_.local_rrg.shortest_paths(state_.local_rrg.root);
        // One travel step: follow the tree path all the way to the selected
        // viewpoint, scanning along the way, then replan from there.
        std::vector<int> path;
        for (int cur = target; cur >= 0; cur = sp.pred[cur]) {
            path.push_back(cur);
            if (cur == state_.local_rrg.root) break;
        }
        std::reverse(path.begin(), path.end());
        const geom::Point2 root_pos = nodes[state_.local_rrg.root].position;
        const geom::Point2 target_pos = nodes[target].position;
        if (geom::dist(target_pos, root_pos) > geom::kEpsGeom) {
            state_.prev_branch_dir = target_pos - root_pos;
        }
        for (size_t i = 1; i < path.size(); ++i) {
            move_to_node(path[i], state_.local_rrg);
            nodes[path[i]].visited = true;
        }
        state_.local_rrg.root = target;
        recenter_window_if_needed();
    } else {
        rec.best_gain = 0.0;
    }

    rec.sim_steps = sim_steps_;
    rec.pose = state_.robot_pose;
    rec.coverage = coverage();
    if (on_step) on_step(*this, rec);
    return rec;
}

void Exploration::check_stall() {
    if (state_.stage != Stage::Local) return;
    if (last_select_exhausted_) {
        ++state_.stall_count;
    } else {
        state_.stall_count = 0;
    }
    if (state_.stall_count >= params_.n_stall) {
        merge_local_into_global();
        log.transitions.push_back({iteration_, Stage::Local, Stage::Relocating});
        state_.stage = Stage::Relocating;
        state_.stall_count = 0;
    }
}

void Exploration::relocate() {
    if (state_.stage != Stage::Relocating) return;
    rrg::Rrg& global = state_.global_rrg;
    const int start = robot_global_node();
    if (start < 0) {
        log.transitions.push_back({iteration_, Stage::Relocating, Stage::Done});
        state_.stage = Stage::Done;
        return;
    }
    const auto sp = global.shortest_paths(start);

    int best = -1;
    double best_score = -1.0;
    for (const auto& node : global.nodes) {
        if (node.visited) continue;
        if (node.volumetric_gain < params_.gain.gain_threshold) continue;
        if (!std::isfinite(sp.dist[node.id])) continue;  // unreachable candidate: dropped
        const double score =
            node.volumetric_gain * std::exp(-params_.gain.lambda2 * sp.dist[node.id]);
        if (score > best_score) {
            best_score = score;
            best = node.id;
        }
    }
    if (best < 0) {
        log.transitions.push_back({iteration_, Stage::Relocating, Stage::Done});
        state_.stage = Stage::Done;
        return;
    }

    // Walk the global shortest path to the candidate, scanning en route.
    std::vector<int> path;
    for (int cur = best; cur >= 0; cur = sp.pred[cur]) {
        path.push_back(cur);
        if (cur == start) break;
    }
    std::reverse(path.begin(), path.end());
    for (size_t i = 1; i < path.size(); ++i) move_to_node(path[i], global);

    global.nodes[best].visited = true;
    global.nodes[best].volumetric_gain = 0;
    log.relocations.push_back({iteration_, global.nodes[best].position, sp.dist[best]});
    log.transitions.push_back({iteration_, Stage::Relocating, Stage::Local});

    state_.stage = Stage::Local;
    state_.local_rrg = rrg::Rrg::with_root(state_.robot_pose);
    enter_window();
    state_.stall_count = 0;
}

ExplorationLog Exploration::run_to_completion() {
    const auto t0 = std::chrono::steady_clock::now();
    while (state_.stage != Stage::Done) {
        if (sim_steps_ > params_.step_budget) {
            log.incomplete = true;
            break;
        }
        if (state_.stage == Stage::Local) {
            log.steps.push_back(local_step());
            check_stall();
        } else {
            relocate();
        }
    }
    log.coverage = coverage();
    log.sim_steps = sim_steps_;
    log.iterations = iteration_;
    log.distance_traveled = distance_traveled_;
    log.wall_time_s = seconds_since(t0);
    return log;
}

gain::GainReport Exploration::gain_report(bool fill_both) {
    gain::GainReport report;
    const auto& nodes = state_.local_rrg.nodes;
    std::vector<int> unknown = last_unknown_gain_;
    std::vector<int> graph = last_graph_gain_;
    unknown.resize(nodes.size(), 0);
    graph.resize(nodes.size(), 0);
    if (fill_both) {
        if (variant_ != GainVariant::UnknownGain && !measure_both_) {
            const auto t0 = std::chrono::steady_clock::now();
            for (const auto& node : nodes) {
                unknown[node.id] =
                    grid::unknown_gain(grid_, node.position, params_.gain.gain_radius);
            }
            report.baseline_s = seconds_since(t0);
        }
        if (variant_ != GainVariant::GraphGain && !measure_both_) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto vch =
                rrg::build_vch(state_.local_rrg, assemble_stage_fail(), params_.downsample_res);
            if (vch.size() >= 3) {
                try {
                    last_hull_ = geom::filter_hull(
                        geom::concave_hull(vch, 2.0 * params_.robot_size), params_.robot_size);
                } catch (const std::exception&) {
                    last_hull_ = geom::ConcaveHull{};
                }
            }
            report.hull_build_s = seconds_since(t0);
            if (has_hull()) {
                const auto t1 = std::chrono::steady_clock::now();
                rrg::Rrg copy = state_.local_rrg;
                graph = gain::graph_gain(last_hull_, copy, grid_, params_.gain, &gain_stats_);
                report.gain_update_s = seconds_since(t1);
            }
        }
    }
    for (const auto& node : nodes) {
        report.rows.push_back({node.id, node.position.x, node.position.y, unknown[node.id],
                               graph[node.id], node.exploration_gain});
    }
    return report;
}

}  // namespace hullgain::planner
