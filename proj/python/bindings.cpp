#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hullgain/config.hpp"
#include "hullgain/gain.hpp"
#include "hullgain/geom.hpp"
#include "hullgain/grid.hpp"
#include "hullgain/io.hpp"
#include "hullgain/planner.hpp"
#include "hullgain/rrg.hpp"
#include "hullgain/sim.hpp"

namespace py = pybind11;
using namespace hullgain;

namespace {

geom::Point2 to_point(const std::pair<double, double>& p) {
    return {p.first, p.second};
}

std::vector<geom::Point2> to_points(const std::vector<std::pair<double, double>>& pts) {
    std::vector<geom::Point2> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(to_point(p));
    return out;
}

geom::ConcaveHull hull_from_lists(const std::vector<std::tuple<double, double, std::string>>& pts) {
    geom::ConcaveHull hull;
    for (const auto& [x, y, label] : pts) {
        geom::NodeLabel l;
        if (label == "successful") l = geom::NodeLabel::Successful;
        else if (label == "occupied") l = geom::NodeLabel::Occupied;
        else if (label == "unknown") l = geom::NodeLabel::Unknown;
        else if (label == "beyond_window") l = geom::NodeLabel::BeyondWindow;
        else throw std::invalid_argument("bad label: " + label);
        hull.boundary.push_back({{x, y}, l});
    }
    const int n = hull.size();
    hull.edge_passable.resize(n);
    hull.edge_removal_blocked.assign(n, false);
    for (int i = 0; i < n; ++i) {
        hull.edge_passable[i] = geom::is_passable_label(hull.boundary[i].label) &&
                                geom::is_passable_label(hull.boundary[(i + 1) % n].label);
    }
    return hull;
}

py::list hull_to_list(const geom::ConcaveHull& hull) {
    py::list out;
    for (const auto& node : hull.boundary) {
        out.append(py::make_tuple(node.position.x, node.position.y, geom::to_string(node.label)));
    }
    return out;
}

config::ExperimentConfig config_from_kwargs(const py::kwargs& kwargs) {
    config::ExperimentConfig cfg;
    for (const auto& item : kwargs) {
        const std::string key = py::cast<std::string>(item.first);
        const auto& value = item.second;
        if (key == "world") cfg.world = py::cast<std::string>(value);
        else if (key == "gain") cfg.gain = py::cast<std::string>(value);
        else if (key == "seed") cfg.seed = py::cast<std::uint64_t>(value);
        else if (key == "step_size") cfg.step_size = py::cast<double>(value);
        else if (key == "connect_radius") cfg.connect_radius = py::cast<double>(value);
        else if (key == "n_samples") cfg.n_samples = py::cast<int>(value);
        else if (key == "min_node_separation") cfg.min_node_separation = py::cast<double>(value);
        else if (key == "window_half_extent") cfg.window_half_extent = py::cast<double>(value);
        else if (key == "margin") cfg.margin = py::cast<double>(value);
        else if (key == "robot_size") cfg.robot_size = py::cast<double>(value);
        else if (key == "downsample_res") cfg.downsample_res = py::cast<double>(value);
        else if (key == "sensor_range") cfg.sensor_range = py::cast<double>(value);
        else if (key == "n_beams") cfg.n_beams = py::cast<int>(value);
        else if (key == "gain_radius") cfg.gain_radius = py::cast<double>(value);
        else if (key == "lambda_") cfg.lambda = py::cast<double>(value);
        else if (key == "lambda1") cfg.lambda1 = py::cast<double>(value);
        else if (key == "lambda2") cfg.lambda2 = py::cast<double>(value);
        else if (key == "gain_threshold") cfg.gain_threshold = py::cast<double>(value);
        else if (key == "edge_rule") cfg.edge_rule = py::cast<std::string>(value);
        else if (key == "n_stall") cfg.n_stall = py::cast<int>(value);
        else if (key == "step_budget") cfg.step_budget = py::cast<long>(value);
        else throw std::invalid_argument("unknown config key: " + key);
    }
    cfg.validate();
    return cfg;
}

}  // namespace

PYBIND11_MODULE(hullgain, m) {
    m.doc() = "concave-hull volumetric gain exploration testbed";

    m.def("cross",
          [](std::pair<double, double> o, std::pair<double, double> a,
             std::pair<double, double> b) {
              return geom::cross(to_point(o), to_point(a), to_point(b));
          },
          "Signed area of the turn o->a->b");

    m.def("segments_intersect",
          [](std::pair<double, double> a, std::pair<double, double> b,
             std::pair<double, double> c, std::pair<double, double> d) {
              return geom::segments_intersect(to_point(a), to_point(b), to_point(c), to_point(d));
          });

    m.def("point_in_polygon",
          [](std::pair<double, double> p, const std::vector<std::pair<double, double>>& poly) {
              return geom::point_in_polygon(to_point(p), to_points(poly));
          });

    m.def("delaunay", [](const std::vector<std::pair<double, double>>& pts) {
        const auto tri = geom::delaunay(to_points(pts));
        py::list vertices, triangles, exterior;
        for (const auto& v : tri.vertices) vertices.append(py::make_tuple(v.x, v.y));
        for (const auto& t : tri.triangles) triangles.append(py::make_tuple(t[0], t[1], t[2]));
        for (const auto& [a, b] : tri.exterior_edges) exterior.append(py::make_tuple(a, b));
        py::dict out;
        out["vertices"] = vertices;
        out["triangles"] = triangles;
        out["exterior_edges"] = exterior;
        return out;
    });

    m.def("concave_hull",
          [](const std::vector<std::tuple<double, double, std::string>>& nodes, double max_edge) {
              std::vector<geom::LabeledNode> labeled;
              for (const auto& [x, y, label] : nodes) {
                  geom::NodeLabel l = geom::NodeLabel::Successful;
                  if (label == "occupied") l = geom::NodeLabel::Occupied;
                  else if (label == "unknown") l = geom::NodeLabel::Unknown;
                  else if (label == "beyond_window") l = geom::NodeLabel::BeyondWindow;
                  labeled.push_back({{x, y}, l});
              }
              return hull_to_list(geom::concave_hull(labeled, max_edge));
          },
          py::arg("nodes"), py::arg("max_edge_length"));

    m.def("check_intersection",
          [](const std::vector<std::tuple<double, double, std::string>>& hull,
             std::pair<double, double> node, std::pair<double, double> voxel,
             const std::string& rule) {
              return gain::check_intersection(hull_from_lists(hull), to_point(node),
                                              to_point(voxel),
                                              rule == "any" ? gain::EdgeRule::Any
                                                            : gain::EdgeRule::Both);
          },
          py::arg("hull"), py::arg("node"), py::arg("voxel"), py::arg("rule") = "both");

    m.def("exploration_gain_nbvp",
          [](const std::vector<std::tuple<double, double, double>>& branch, double lambda) {
              std::vector<gain::BranchNode> nodes;
              for (const auto& [x, y, v] : branch) nodes.push_back({{x, y}, v});
              gain::GainParams params;
              params.lambda = lambda;
              return gain::exploration_gain_nbvp(nodes, params);
          },
          py::arg("branch"), py::arg("lambda_") = 0.5);

    m.def("exploration_gain_dsvp",
          [](const std::vector<std::tuple<double, double, double>>& branch,
             std::pair<double, double> prev_dir, double lambda1, double lambda2) {
              std::vector<gain::BranchNode> nodes;
              for (const auto& [x, y, v] : branch) nodes.push_back({{x, y}, v});
              gain::GainParams params;
              params.lambda1 = lambda1;
              params.lambda2 = lambda2;
              return gain::exploration_gain_dsvp(nodes, to_point(prev_dir), params);
          },
          py::arg("branch"), py::arg("prev_dir"), py::arg("lambda1") = 0.5,
          py::arg("lambda2") = 0.2);

    py::class_<sim::World>(m, "World")
        .def_static("builtin", &sim::builtin_world)
        .def_static("from_ascii", &sim::World::from_ascii)
        .def_static("load_file", &sim::World::load_file)
        .def("to_ascii", &sim::World::to_ascii)
        .def_property_readonly("width", &sim::World::width)
        .def_property_readonly("height", &sim::World::height)
        .def_property_readonly("resolution", &sim::World::resolution)
        .def_property_readonly("spawn",
                               [](const sim::World& w) {
                                   return py::make_tuple(w.spawn().x, w.spawn().y);
                               })
        .def("reachable_free_count", [](const sim::World& w) { return sim::reachable_free_count(w); });

    m.def("builtin_world_names", [] { return sim::builtin_world_names(); });

    m.def("unknown_gain",
          [](const std::string& grid_ascii, std::pair<double, double> node, double radius) {
              const auto grid = grid::OccupancyGrid::from_ascii(grid_ascii);
              return grid::unknown_gain(grid, to_point(node), radius);
          },
          py::arg("grid_ascii"), py::arg("node"), py::arg("gain_radius"));

    m.def("run_exploration",
          [](const py::kwargs& kwargs) {
              const auto cfg = config_from_kwargs(kwargs);
              planner::Exploration exp(cfg.load_world(), cfg.planner_params(), cfg.gain_variant(),
                                       cfg.seed);
              const auto log = exp.run_to_completion();
              py::dict out;
              out["coverage"] = log.coverage;
              out["iterations"] = log.iterations;
              out["sim_steps"] = log.sim_steps;
              out["distance_traveled"] = log.distance_traveled;
              out["relocations"] = static_cast<int>(log.relocations.size());
              out["incomplete"] = log.incomplete;
              py::list targets;
              for (const auto& r : log.relocations) {
                  targets.append(py::make_tuple(r.target.x, r.target.y));
              }
              out["relocation_targets"] = targets;
              out["summary_json"] = io::summary_json(log, cfg);
              return out;
          },
          "Run one exploration; keyword arguments mirror the CLI flags");
}
