#include "hullgain/svg.hpp"

#include <algorithm>
#include <sstream>

#include "hullgain/grid.hpp"

namespace hullgain::svg {

namespace {

const char* label_color(geom::NodeLabel label) {
    switch (label) {
        case geom::NodeLabel::Successful: return "#d62728";   // red, graph side
        case geom::NodeLabel::Unknown: return "#ff7f0e";      // orange frontier
        case geom::NodeLabel::Occupied: return "#7f3fbf";     // purple
        case geom::NodeLabel::BeyondWindow: return "#9467bd"; // lighter purple
    }
    return "#000000";
}

}  // namespace

std::string render_frame(const io::FrameSnapshot& frame, double resolution) {
    const auto grid = grid::OccupancyGrid::from_ascii(frame.grid_ascii);
    const double scale = 24.0;  // px per meter
    const double w = grid.width() * resolution * scale;
    const double h = grid.height() * resolution * scale;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"#b0b0b0\"/>\n";

    // y flips: world y up, svg y down.
    const auto px = [&](double x) { return x * scale; };
    const auto py = [&](double y) { return h - y * scale; };

    // Map cells, free/occupied only, merged into horizontal runs.
    for (int y = 0; y < grid.height(); ++y) {
        int x = 0;
        while (x < grid.width()) {
            const auto state = grid.at({x, y});
            int run = x;
            while (run < grid.width() && grid.at({run, y}) == state) ++run;
            if (state != grid::CellState::Unknown) {
                const char* color = state == grid::CellState::Free ? "#f5f5f5" : "#303030";
                out << "<rect x=\"" << px(x * resolution) << "\" y=\""
                    << py((y + 1) * resolution) << "\" width=\"" << (run - x) * resolution * scale
                    << "\" height=\"" << resolution * scale << "\" fill=\"" << color << "\"/>\n";
            }
            x = run;
        }
    }

    // Graph edges.
    out << "<g stroke=\"#e8c520\" stroke-width=\"1\">\n";
    for (const auto& e : frame.graph.edges) {
        const auto& a = frame.graph.nodes[e.a].position;
        const auto& b = frame.graph.nodes[e.b].position;
        out << "<line x1=\"" << px(a.x) << "\" y1=\"" << py(a.y) << "\" x2=\"" << px(b.x)
            << "\" y2=\"" << py(b.y) << "\"/>\n";
    }
    out << "</g>\n";

    // Gain discs behind the hull: radius encodes volumetric gain.
    int max_gain = 1;
    for (const int g : frame.graph_gains) max_gain = std::max(max_gain, g);
    for (const int g : frame.unknown_gains) max_gain = std::max(max_gain, g);
    const auto disc = [&](const std::vector<int>& gains, const char* color) {
        for (size_t i = 0; i < gains.size() && i < frame.graph.nodes.size(); ++i) {
            if (gains[i] <= 0) continue;
            const auto& p = frame.graph.nodes[i].position;
            const double r = 4.0 + 28.0 * gains[i] / max_gain;
            out << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y) << "\" r=\"" << r
                << "\" fill=\"" << color << "\" fill-opacity=\"0.25\"/>\n";
        }
    };
    disc(frame.unknown_gains, "#1f77b4");
    disc(frame.graph_gains, "#2ca02c");

    // Hull boundary, edge color by passability.
    const int m = frame.hull.size();
    for (int i = 0; i < m; ++i) {
        const auto& a = frame.hull.vertex(i);
        const auto& b = frame.hull.vertex((i + 1) % m);
        const bool pass = frame.hull.edge_passable.empty() ? false : frame.hull.edge_passable[i];
        out << "<line x1=\"" << px(a.x) << "\" y1=\"" << py(a.y) << "\" x2=\"" << px(b.x)
            << "\" y2=\"" << py(b.y) << "\" stroke=\"" << (pass ? "#2ca02c" : "#111111")
            << "\" stroke-width=\"2\"/>\n";
    }
    for (int i = 0; i < m; ++i) {
        const auto& n = frame.hull.boundary[i];
        out << "<circle cx=\"" << px(n.position.x) << "\" cy=\"" << py(n.position.y)
            << "\" r=\"3\" fill=\"" << label_color(n.label) << "\"/>\n";
    }

    // Graph nodes and the robot.
    for (const auto& n : frame.graph.nodes) {
        out << "<circle cx=\"" << px(n.position.x) << "\" cy=\"" << py(n.position.y)
            << "\" r=\"2\" fill=\"#c23616\"/>\n";
    }
    out << "<rect x=\"" << px(frame.pose.x) - 5 << "\" y=\"" << py(frame.pose.y) - 5
        << "\" width=\"10\" height=\"10\" fill=\"#000000\"/>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace hullgain::svg
