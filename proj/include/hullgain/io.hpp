#pragma once

#include <string>

#include "hullgain/config.hpp"
#include "hullgain/gain.hpp"
#include "hullgain/planner.hpp"
#include "hullgain/rrg.hpp"

namespace hullgain::io {

// Deterministic artifacts: identical config + seed reproduce these byte
// for byte. Wall-clock timings live in the separate timings artifact.
std::string summary_json(const planner::ExplorationLog& log, const config::ExperimentConfig& cfg);
std::string steps_jsonl(const planner::ExplorationLog& log);
std::string timings_json(const planner::ExplorationLog& log);

struct Summary {
    std::string world;
    std::string gain;
    std::uint64_t seed = 0;
    double coverage = 0.0;
    long sim_steps = 0;
    int iterations = 0;
    double distance_traveled = 0.0;
    int relocations = 0;
    bool incomplete = false;
};
Summary parse_summary(const std::string& text);
planner::ExplorationLog parse_steps_jsonl(const std::string& text);

std::string gain_report_csv(const gain::GainReport& report);
gain::GainReport parse_gain_report_csv(const std::string& text);

std::string rrg_json(const rrg::Rrg& graph, const rrg::FailureSet& fail);
void parse_rrg_json(const std::string& text, rrg::Rrg& graph, rrg::FailureSet& fail);

/// Everything needed to redraw one planner iteration.
struct FrameSnapshot {
    int iteration = 0;
    geom::Point2 pose;
    std::string grid_ascii;
    rrg::Rrg graph;
    rrg::FailureSet fail;
    geom::ConcaveHull hull;
    std::vector<int> graph_gains;
    std::vector<int> unknown_gains;
};
std::string frame_json(const FrameSnapshot& frame);
FrameSnapshot parse_frame_json(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace hullgain::io
