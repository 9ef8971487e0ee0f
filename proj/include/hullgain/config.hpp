#pragma once

#include <cstdint>
#include <string>

#include "hullgain/planner.hpp"
#include "hullgain/sim.hpp"

namespace hullgain::config {

/// Flat experiment configuration; every knob the modules expose, with the
/// pinned defaults. The CLI mirrors these as flags and an INI-style config
/// file.
struct ExperimentConfig {
    std::string world = "empty_room";  // builtin name or path to a world file
    std::string gain = "graph";        // graph | unknown
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    int frames = 0;  // write an SVG frame every K iterations (0 = off)

    double step_size = 1.0;
    double connect_radius = 2.0;
    int n_samples = 300;
    double min_node_separation = 0.5;
    double window_half_extent = 15.0;
    double margin = 2.0;
    double robot_size = 0.6;
    double downsample_res = 0.5;
    double sensor_range = 8.0;
    int n_beams = 360;
    double gain_radius = -1.0;  // <= 0: follow sensor_range
    double lambda = 0.5;
    double lambda1 = 0.5;
    double lambda2 = 0.2;
    double gain_threshold = 5.0;
    std::string edge_rule = "both";  // both | any
    int n_stall = 2;
    long step_budget = 50000;

    /// Throws std::invalid_argument with a message naming the bad key.
    void validate() const;

    planner::PlannerParams planner_params() const;
    planner::GainVariant gain_variant() const;
    sim::World load_world() const;
};

}  // namespace hullgain::config
