#include "hullgain/config.hpp"

#include <stdexcept>

namespace hullgain::config {

void ExperimentConfig::validate() const {
    const auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
    if (gain != "graph" && gain != "unknown") fail("gain must be graph or unknown");
    if (edge_rule != "both" && edge_rule != "any") fail("edge_rule must be both or any");
    if (step_size <= 0.0) fail("step_size must be > 0");
    if (connect_radius <= 0.0) fail("connect_radius must be > 0");
    if (n_samples < 1) fail("n_samples must be >= 1");
    if (min_node_separation < 0.0) fail("min_node_separation must be >= 0");
    if (window_half_extent <= 0.0) fail("window_half_extent must be > 0");
    if (margin < 0.0) fail("margin must be >= 0");
    if (robot_size <= 0.0) fail("robot_size must be > 0");
    if (downsample_res <= 0.0) fail("downsample_res must be > 0");
    if (sensor_range <= 0.0) fail("sensor_range must be > 0");
    if (n_beams < 4) fail("n_beams must be >= 4");
    if (lambda < 0.0 || lambda1 < 0.0 || lambda2 < 0.0) fail("lambdas must be >= 0");
    if (gain_threshold < 0.0) fail("gain_threshold must be >= 0");
    if (n_stall < 1) fail("n_stall must be >= 1");
    if (step_budget < 1) fail("step_budget must be >= 1");
    if (frames < 0) fail("frames must be >= 0");
}

planner::PlannerParams ExperimentConfig::planner_params() const {
    planner::PlannerParams p;
    p.expand.step_size = step_size;
    p.expand.connect_radius = connect_radius;
    p.expand.n_samples = n_samples;
    p.expand.min_node_separation = min_node_separation;
    p.gain.lambda = lambda;
    p.gain.lambda1 = lambda1;
    p.gain.lambda2 = lambda2;
    p.gain.gain_radius = gain_radius > 0.0 ? gain_radius : sensor_range;
    p.gain.edge_rule = edge_rule == "any" ? gain::EdgeRule::Any : gain::EdgeRule::Both;
    p.gain.gain_threshold = gain_threshold;
    p.window_half_extent = window_half_extent;
    p.margin = margin;
    p.robot_size = robot_size;
    p.downsample_res = downsample_res;
    p.n_stall = n_stall;
    p.n_beams = n_beams;
    p.sensor_range = sensor_range;
    p.step_budget = step_budget;
    return p;
}

planner::GainVariant ExperimentConfig::gain_variant() const {
    return gain == "graph" ? planner::GainVariant::GraphGain : planner::GainVariant::UnknownGain;
}

sim::World ExperimentConfig::load_world() const {
    for (const auto& name : sim::builtin_world_names()) {
        if (world == name) return sim::builtin_world(name);
    }
    return sim::World::load_file(world);
}

}  // namespace hullgain::config
