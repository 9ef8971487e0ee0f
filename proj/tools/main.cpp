#include <filesystem>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "hullgain/config.hpp"
#include "hullgain/io.hpp"
#include "hullgain/planner.hpp"
#include "hullgain/svg.hpp"

namespace fs = std::filesystem;
using namespace hullgain;

namespace {

void add_config_flags(CLI::App* cmd, config::ExperimentConfig& cfg) {
    cmd->set_config("--config", "", "INI-style config file; flags override it");
    cmd->add_option("--world", cfg.world, "builtin world name or world file path");
    cmd->add_option("--gain", cfg.gain, "gain variant: graph | unknown");
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--frames", cfg.frames, "write an SVG frame every K iterations");
    cmd->add_option("--step-size", cfg.step_size, "RRT steering step (m)");
    cmd->add_option("--connect-radius", cfg.connect_radius, "graph edge radius (m)");
    cmd->add_option("--n-samples", cfg.n_samples, "expansion attempts per iteration");
    cmd->add_option("--min-node-separation", cfg.min_node_separation,
                    "minimum spacing between graph nodes (m)");
    cmd->add_option("--window-half-extent", cfg.window_half_extent, "sliding window half size (m)");
    cmd->add_option("--margin", cfg.margin, "prune margin beyond the window (m)");
    cmd->add_option("--robot-size", cfg.robot_size, "robot size (m)");
    cmd->add_option("--downsample-res", cfg.downsample_res, "hull input downsampling (m)");
    cmd->add_option("--sensor-range", cfg.sensor_range, "sensor range (m)");
    cmd->add_option("--n-beams", cfg.n_beams, "beams per scan");
    cmd->add_option("--gain-radius", cfg.gain_radius, "gain disc radius (m; <=0 = sensor range)");
    cmd->add_option("--lambda", cfg.lambda, "per-edge distance discount");
    cmd->add_option("--lambda1", cfg.lambda1, "branch direction penalty");
    cmd->add_option("--lambda2", cfg.lambda2, "cumulative distance discount");
    cmd->add_option("--gain-threshold", cfg.gain_threshold, "sufficient exploration gain");
    cmd->add_option("--edge-rule", cfg.edge_rule, "hull edge passability rule: both | any");
    cmd->add_option("--n-stall", cfg.n_stall, "stalled windows before relocation");
    cmd->add_option("--step-budget", cfg.step_budget, "simulation step budget");
}

io::FrameSnapshot snapshot(const planner::Exploration& exp) {
    io::FrameSnapshot frame;
    frame.iteration = exp.iteration();
    frame.pose = exp.state().robot_pose;
    frame.grid_ascii = exp.map().to_ascii();
    frame.graph = exp.state().local_rrg;
    frame.fail = exp.stage_fail_view();
    frame.hull = exp.last_hull();
    frame.graph_gains.assign(frame.graph.nodes.size(), 0);
    frame.unknown_gains.assign(frame.graph.nodes.size(), 0);
    for (const auto& node : frame.graph.nodes) {
        if (exp.variant() == planner::GainVariant::GraphGain) {
            frame.graph_gains[node.id] = node.volumetric_gain;
        } else {
            frame.unknown_gains[node.id] = node.volumetric_gain;
        }
    }
    return frame;
}

int cmd_run(const config::ExperimentConfig& cfg) {
    planner::Exploration exp(cfg.load_world(), cfg.planner_params(), cfg.gain_variant(), cfg.seed);
    fs::create_directories(cfg.out_dir);
    if (cfg.frames > 0) {
        fs::create_directories(fs::path(cfg.out_dir) / "frames");
        exp.on_step = [&](const planner::Exploration& e, const planner::StepRecord& rec) {
            if ((rec.iteration - 1) % cfg.frames != 0) return;
            const auto frame = snapshot(e);
            std::ostringstream name;
            name << "frame_" << std::setw(5) << std::setfill('0') << rec.iteration;
            const auto base = fs::path(cfg.out_dir) / "frames" / name.str();
            io::write_file(base.string() + ".json", io::frame_json(frame));
            io::write_file(base.string() + ".svg",
                           svg::render_frame(frame, e.map().resolution()));
        };
    }
    const auto log = exp.run_to_completion();
    io::write_file((fs::path(cfg.out_dir) / "summary.json").string(), io::summary_json(log, cfg));
    io::write_file((fs::path(cfg.out_dir) / "steps.jsonl").string(), io::steps_jsonl(log));
    io::write_file((fs::path(cfg.out_dir) / "timings.json").string(), io::timings_json(log));
    io::write_file((fs::path(cfg.out_dir) / "gains_final.csv").string(),
                   io::gain_report_csv(exp.gain_report(true)));
    io::write_file((fs::path(cfg.out_dir) / "rrg.json").string(),
                   io::rrg_json(exp.state().global_rrg, exp.state().fail));
    std::cout << "world=" << cfg.world << " gain=" << cfg.gain << " seed=" << cfg.seed
              << " coverage=" << log.coverage << " iterations=" << log.iterations
              << " sim_steps=" << log.sim_steps << " relocations=" << log.relocations.size()
              << (log.incomplete ? " INCOMPLETE" : "") << "\n";
    return log.incomplete ? 2 : 0;
}

int cmd_bench(const config::ExperimentConfig& cfg, int repeats) {
    fs::create_directories(cfg.out_dir);
    std::ostringstream csv;
    csv << "seed,iterations,mean_hull_s,mean_update_s,mean_graph_s,mean_baseline_s,ratio\n";
    double total_graph = 0.0, total_baseline = 0.0;
    long total_iters = 0;
    std::cout << std::left << std::setw(6) << "seed" << std::setw(8) << "iters" << std::setw(14)
              << "graph (ms)" << std::setw(14) << "unknown (ms)" << std::setw(8) << "ratio"
              << "\n";
    for (int r = 0; r < repeats; ++r) {
        const std::uint64_t seed = cfg.seed + r;
        planner::Exploration exp(cfg.load_world(), cfg.planner_params(),
                                 planner::GainVariant::GraphGain, seed);
        exp.set_measure_both(true);
        const auto log = exp.run_to_completion();
        double hull = 0.0, update = 0.0, baseline = 0.0;
        for (const auto& s : log.steps) {
            hull += s.hull_build_s;
            update += s.gain_update_s;
            baseline += s.baseline_s;
        }
        const long iters = log.steps.size();
        const double graph = hull + update;
        total_graph += graph;
        total_baseline += baseline;
        total_iters += iters;
        const double ratio = baseline > 0.0 ? graph / baseline : 0.0;
        csv << seed << "," << iters << "," << hull / iters << "," << update / iters << ","
            << graph / iters << "," << baseline / iters << "," << ratio << "\n";
        std::cout << std::setw(6) << seed << std::setw(8) << iters << std::setw(14)
                  << 1e3 * graph / iters << std::setw(14) << 1e3 * baseline / iters << std::setw(8)
                  << ratio << "\n";
    }
    const double pooled = total_baseline > 0.0 ? total_graph / total_baseline : 0.0;
    std::cout << "pooled mean per-iteration: graph=" << 1e3 * total_graph / total_iters
              << " ms, unknown=" << 1e3 * total_baseline / total_iters << " ms, ratio=" << pooled
              << "\n";
    csv << "pooled,," << "" << ",,"
        << total_graph / total_iters << "," << total_baseline / total_iters << "," << pooled
        << "\n";
    io::write_file((fs::path(cfg.out_dir) / "bench.csv").string(), csv.str());
    return 0;
}

int cmd_render(const std::string& log_dir) {
    int rendered = 0;
    for (const auto& entry : fs::directory_iterator(fs::path(log_dir) / "frames")) {
        if (entry.path().extension() != ".json") continue;
        const auto frame = io::parse_frame_json(io::read_file(entry.path().string()));
        const auto grid = grid::OccupancyGrid::from_ascii(frame.grid_ascii);
        auto out = entry.path();
        out.replace_extension(".svg");
        io::write_file(out.string(), svg::render_frame(frame, grid.resolution()));
        ++rendered;
    }
    std::cout << "rendered " << rendered << " frames\n";
    return rendered > 0 ? 0 : 1;
}

int cmd_validate_world(const std::string& world_arg) {
    config::ExperimentConfig cfg;
    cfg.world = world_arg;
    const auto world = cfg.load_world();
    world.validate();
    const int reachable = sim::reachable_free_count(world);
    std::cout << "world ok: " << world.width() << "x" << world.height() << " cells at "
              << world.resolution() << " m, spawn (" << world.spawn().x << ", " << world.spawn().y
              << "), reachable free cells " << reachable << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"concave-hull volumetric gain exploration testbed"};
    app.require_subcommand(1);

    config::ExperimentConfig cfg;
    int repeats = 10;
    std::string log_dir = "out";
    std::string world_arg = "empty_room";

    auto* run = app.add_subcommand("run", "run one exploration and write artifacts");
    add_config_flags(run, cfg);

    auto* bench = app.add_subcommand("bench", "time graph gain vs unknown gain on shared states");
    add_config_flags(bench, cfg);
    bench->add_option("--repeats", repeats, "number of seeded runs");

    auto* render = app.add_subcommand("render", "re-render SVG frames from a saved log");
    render->add_option("--log", log_dir, "log directory with frames/")->required();

    auto* validate = app.add_subcommand("validate-world", "check a world file");
    validate->add_option("--world", world_arg, "builtin name or path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            cfg.validate();
            return cmd_run(cfg);
        }
        if (bench->parsed()) {
            cfg.validate();
            if (repeats < 1) throw std::invalid_argument("config: repeats must be >= 1");
            return cmd_bench(cfg, repeats);
        }
        if (render->parsed()) return cmd_render(log_dir);
        if (validate->parsed()) return cmd_validate_world(world_arg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
