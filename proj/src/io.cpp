#include "hullgain/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hullgain::io {

using nlohmann::json;

std::string summary_json(const planner::ExplorationLog& log, const config::ExperimentConfig& cfg) {
    json j;
    j["world"] = cfg.world;
    j["gain"] = cfg.gain;
    j["seed"] = cfg.seed;
    j["coverage"] = log.coverage;
    j["sim_steps"] = log.sim_steps;
    j["iterations"] = log.iterations;
    j["distance_traveled"] = log.distance_traveled;
    j["relocations"] = static_cast<int>(log.relocations.size());
    json relocs = json::array();
    for (const auto& r : log.relocations) {
        relocs.push_back({{"iteration", r.iteration},
                          {"x", r.target.x},
                          {"y", r.target.y},
                          {"path_length", r.path_length}});
    }
    j["relocation_targets"] = relocs;
    json trans = json::array();
    for (const auto& t : log.transitions) {
        trans.push_back({{"iteration", t.iteration},
                         {"from", planner::to_string(t.from)},
                         {"to", planner::to_string(t.to)}});
    }
    j["transitions"] = trans;
    j["incomplete"] = log.incomplete;
    return j.dump(2) + "\n";
}

Summary parse_summary(const std::string& text) {
    const json j = json::parse(text);
    Summary s;
    s.world = j.at("world").get<std::string>();
    s.gain = j.at("gain").get<std::string>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.coverage = j.at("coverage").get<double>();
    s.sim_steps = j.at("sim_steps").get<long>();
    s.iterations = j.at("iterations").get<int>();
    s.distance_traveled = j.at("distance_traveled").get<double>();
    s.relocations = j.at("relocations").get<int>();
    s.incomplete = j.at("incomplete").get<bool>();
    return s;
}

std::string steps_jsonl(const planner::ExplorationLog& log) {
    std::ostringstream out;
    for (const auto& s : log.steps) {
        json j;
        j["iteration"] = s.iteration;
        j["sim_steps"] = s.sim_steps;
        j["stage"] = planner::to_string(s.stage);
        j["x"] = s.pose.x;
        j["y"] = s.pose.y;
        j["coverage"] = s.coverage;
        j["best_gain"] = s.best_gain;
        j["selected"] = s.selected;
        j["rrg_nodes"] = s.rrg_nodes;
        j["hull_size"] = s.hull_size;
        out << j.dump() << "\n";
    }
    return out.str();
}

planner::ExplorationLog parse_steps_jsonl(const std::string& text) {
    planner::ExplorationLog log;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        planner::StepRecord s;
        s.iteration = j.at("iteration").get<int>();
        s.sim_steps = j.at("sim_steps").get<long>();
        s.pose = {j.at("x").get<double>(), j.at("y").get<double>()};
        s.coverage = j.at("coverage").get<double>();
        s.best_gain = j.at("best_gain").get<double>();
        s.selected = j.at("selected").get<int>();
        s.rrg_nodes = j.at("rrg_nodes").get<int>();
        s.hull_size = j.at("hull_size").get<int>();
        log.steps.push_back(s);
    }
    log.iterations = static_cast<int>(log.steps.size());
    if (!log.steps.empty()) {
        log.coverage = log.steps.back().coverage;
        log.sim_steps = log.steps.back().sim_steps;
    }
    return log;
}

std::string timings_json(const planner::ExplorationLog& log) {
    json j;
    j["wall_time_s"] = log.wall_time_s;
    double hull = 0.0, update = 0.0, baseline = 0.0;
    json per_iter = json::array();
    for (const auto& s : log.steps) {
        hull += s.hull_build_s;
        update += s.gain_update_s;
        baseline += s.baseline_s;
        per_iter.push_back({{"iteration", s.iteration},
                            {"hull_build_s", s.hull_build_s},
                            {"gain_update_s", s.gain_update_s},
                            {"baseline_s", s.baseline_s}});
    }
    j["hull_build_s"] = hull;
    j["gain_update_s"] = update;
    j["baseline_s"] = baseline;
    j["per_iteration"] = per_iter;
    return j.dump(2) + "\n";
}

std::string gain_report_csv(const gain::GainReport& report) {
    std::ostringstream out;
    out << "# hull_build_s=" << report.hull_build_s << " gain_update_s=" << report.gain_update_s
        << " baseline_s=" << report.baseline_s << "\n";
    out << "id,x,y,unknown_gain,graph_gain,exploration_gain\n";
    out.precision(17);
    for (const auto& r : report.rows) {
        out << r.id << "," << r.x << "," << r.y << "," << r.unknown_gain << "," << r.graph_gain
            << "," << r.exploration_gain << "\n";
    }
    return out.str();
}

gain::GainReport parse_gain_report_csv(const std::string& text) {
    gain::GainReport report;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("id,", 0) == 0) continue;
        std::istringstream row(line);
        gain::GainReportRow r;
        char comma;
        row >> r.id >> comma >> r.x >> comma >> r.y >> comma >> r.unknown_gain >> comma >>
            r.graph_gain >> comma >> r.exploration_gain;
        report.rows.push_back(r);
    }
    return report;
}

namespace {

json node_to_json(const rrg::RrgNode& n) {
    return {{"id", n.id},          {"x", n.position.x},
            {"y", n.position.y},   {"volumetric_gain", n.volumetric_gain},
            {"exploration_gain", n.exploration_gain},
            {"visited", n.visited}, {"parent", n.parent}};
}

rrg::RrgNode node_from_json(const json& j) {
    rrg::RrgNode n;
    n.id = j.at("id").get<int>();
    n.position = {j.at("x").get<double>(), j.at("y").get<double>()};
    n.volumetric_gain = j.at("volumetric_gain").get<int>();
    n.exploration_gain = j.at("exploration_gain").get<double>();
    n.visited = j.at("visited").get<bool>();
    n.parent = j.at("parent").get<int>();
    return n;
}

json labeled_to_json(const geom::LabeledNode& n) {
    return {{"x", n.position.x}, {"y", n.position.y}, {"label", geom::to_string(n.label)}};
}

geom::NodeLabel label_from_string(const std::string& s) {
    if (s == "successful") return geom::NodeLabel::Successful;
    if (s == "occupied") return geom::NodeLabel::Occupied;
    if (s == "unknown") return geom::NodeLabel::Unknown;
    if (s == "beyond_window") return geom::NodeLabel::BeyondWindow;
    throw std::invalid_argument("bad node label: " + s);
}

geom::LabeledNode labeled_from_json(const json& j) {
    return {{j.at("x").get<double>(), j.at("y").get<double>()},
            label_from_string(j.at("label").get<std::string>())};
}

}  // namespace

std::string rrg_json(const rrg::Rrg& graph, const rrg::FailureSet& fail) {
    json j;
    j["root"] = graph.root;
    json nodes = json::array();
    for (const auto& n : graph.nodes) nodes.push_back(node_to_json(n));
    j["nodes"] = nodes;
    json edges = json::array();
    for (const auto& e : graph.edges) edges.push_back({e.a, e.b, e.length});
    j["edges"] = edges;
    json failures = json::array();
    for (const auto& n : fail.nodes) failures.push_back(labeled_to_json(n));
    j["failures"] = failures;
    return j.dump(2) + "\n";
}

void parse_rrg_json(const std::string& text, rrg::Rrg& graph, rrg::FailureSet& fail) {
    const json j = json::parse(text);
    graph = rrg::Rrg{};
    fail = rrg::FailureSet{};
    graph.root = j.at("root").get<int>();
    for (const auto& n : j.at("nodes")) graph.nodes.push_back(node_from_json(n));
    for (const auto& e : j.at("edges")) {
        graph.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    }
    for (const auto& n : j.at("failures")) fail.nodes.push_back(labeled_from_json(n));
}

std::string frame_json(const FrameSnapshot& frame) {
    json j;
    j["iteration"] = frame.iteration;
    j["x"] = frame.pose.x;
    j["y"] = frame.pose.y;
    j["grid"] = frame.grid_ascii;
    json graph = json::parse(rrg_json(frame.graph, frame.fail));
    j["rrg"] = graph;
    json hull = json::array();
    for (const auto& n : frame.hull.boundary) hull.push_back(labeled_to_json(n));
    j["hull"] = hull;
    j["graph_gains"] = frame.graph_gains;
    j["unknown_gains"] = frame.unknown_gains;
    return j.dump() + "\n";
}

FrameSnapshot parse_frame_json(const std::string& text) {
    const json j = json::parse(text);
    FrameSnapshot frame;
    frame.iteration = j.at("iteration").get<int>();
    frame.pose = {j.at("x").get<double>(), j.at("y").get<double>()};
    frame.grid_ascii = j.at("grid").get<std::string>();
    parse_rrg_json(j.at("rrg").dump(), frame.graph, frame.fail);
    for (const auto& n : j.at("hull")) frame.hull.boundary.push_back(labeled_from_json(n));
    const int m = frame.hull.size();
    frame.hull.edge_passable.resize(m);
    frame.hull.edge_removal_blocked.assign(m, false);
    for (int i = 0; i < m; ++i) {
        frame.hull.edge_passable[i] =
            geom::is_passable_label(frame.hull.boundary[i].label) &&
            geom::is_passable_label(frame.hull.boundary[(i + 1) % m].label);
    }
    frame.graph_gains = j.at("graph_gains").get<std::vector<int>>();
    frame.unknown_gains = j.at("unknown_gains").get<std::vector<int>>();
    return frame;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

}  // namespace hullgain::io
