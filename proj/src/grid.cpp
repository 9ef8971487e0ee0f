#include "hullgain/grid.hpp"

#include <cmath>
#include <sstream>

#include "hullgain/sim.hpp"

namespace hullgain::grid {

OccupancyGrid::OccupancyGrid(double resolution, geom::Point2 origin, int width, int height)
    : resolution_(resolution),
      origin_(origin),
      width_(width),
      height_(height),
      cells_(static_cast<size_t>(width) * height, CellState::Unknown) {
    if (resolution <= 0.0 || width <= 0 || height <= 0) {
        throw std::invalid_argument("OccupancyGrid: bad dimensions");
    }
}

bool OccupancyGrid::in_bounds(const geom::Point2& p) const {
    const double lx = p.x - origin_.x;
    const double ly = p.y - origin_.y;
    return lx >= 0.0 && ly >= 0.0 && lx < width_ * resolution_ && ly < height_ * resolution_;
}

Cell OccupancyGrid::cell_at(const geom::Point2& p) const {
    if (!in_bounds(p)) throw std::invalid_argument("OccupancyGrid: point out of bounds");
    return {static_cast<int>((p.x - origin_.x) / resolution_),
            static_cast<int>((p.y - origin_.y) / resolution_)};
}

geom::Point2 OccupancyGrid::cell_center(const Cell& c) const {
    return {origin_.x + (c.x + 0.5) * resolution_, origin_.y + (c.y + 0.5) * resolution_};
}

void OccupancyGrid::set(const Cell& c, CellState state) {
    CellState& cur = cells_[index(c)];
    if (cur == CellState::Occupied) return;            // occupied is sticky
    if (state == CellState::Unknown) return;           // knowledge never reverts
    cur = state;
}

int OccupancyGrid::count(CellState state) const {
    int n = 0;
    for (const auto c : cells_) n += (c == state) ? 1 : 0;
    return n;
}

std::string OccupancyGrid::to_ascii() const {
    std::ostringstream out;
    out << "resolution=" << resolution_ << "\n";
    out << "origin=" << origin_.x << " " << origin_.y << "\n";
    for (int y = height_ - 1; y >= 0; --y) {
        for (int x = 0; x < width_; ++x) {
            switch (at({x, y})) {
                case CellState::Unknown: out << '?'; break;
                case CellState::Free: out << '.'; break;
                case CellState::Occupied: out << '#'; break;
            }
        }
        out << "\n";
    }
    return out.str();
}

OccupancyGrid OccupancyGrid::from_ascii(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    double resolution = 0.0;
    geom::Point2 origin{0.0, 0.0};
    if (!std::getline(in, line) || line.rfind("resolution=", 0) != 0) {
        throw std::invalid_argument("grid ascii: missing resolution header");
    }
    resolution = std::stod(line.substr(11));
    if (!std::getline(in, line) || line.rfind("origin=", 0) != 0) {
        throw std::invalid_argument("grid ascii: missing origin header");
    }
    {
        std::istringstream o(line.substr(7));
        o >> origin.x >> origin.y;
    }
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (!line.empty()) rows.push_back(line);
    }
    if (rows.empty()) throw std::invalid_argument("grid ascii: no rows");
    const int height = static_cast<int>(rows.size());
    const int width = static_cast<int>(rows[0].size());
    OccupancyGrid grid(resolution, origin, width, height);
    for (int y = 0; y < height; ++y) {
        const std::string& row = rows[height - 1 - y];
        if (static_cast<int>(row.size()) != width) {
            throw std::invalid_argument("grid ascii: ragged rows");
        }
        for (int x = 0; x < width; ++x) {
            switch (row[x]) {
                case '?': break;
                case '.': grid.set({x, y}, CellState::Free); break;
                case '#': grid.set({x, y}, CellState::Occupied); break;
                default: throw std::invalid_argument("grid ascii: bad cell char");
            }
        }
    }
    return grid;
}

std::vector<Cell> raycast(const OccupancyGrid& grid, const geom::Point2& from,
                          const geom::Point2& to) {
    std::vector<Cell> cells;
    raycast_visit(grid, from, to, [&](const Cell& c) {
        cells.push_back(c);
        return true;
    });
    return cells;
}

bool is_line_free(const OccupancyGrid& grid, const geom::Point2& a, const geom::Point2& b) {
    bool free = true;
    raycast_visit(grid, a, b, [&](const Cell& c) {
        if (grid.at(c) == CellState::Occupied) {
            free = false;
            return false;
        }
        return true;
    });
    return free;
}

void integrate_scan(OccupancyGrid& grid, const geom::Point2& pose, const sim::SensorScan& scan) {
    for (const auto& beam : scan.beams) {
        size_t next_hit = 0;
        ray_march(grid, pose, beam.angle, beam.end_range, [&](const Cell& c, double) {
            bool is_hit = false;
            while (next_hit < beam.hits.size() && beam.hits[next_hit].cell == c) {
                is_hit = true;
                ++next_hit;
            }
            grid.set(c, is_hit ? CellState::Occupied : CellState::Free);
            return true;
        });
    }
}

int unknown_gain(const OccupancyGrid& grid, const geom::Point2& node, double gain_radius) {
    if (!grid.in_bounds(node)) throw std::invalid_argument("unknown_gain: node out of bounds");
    if (!(gain_radius > 0.0)) throw std::invalid_argument("unknown_gain: radius must be > 0");
    const double res = grid.resolution();
    const Cell nc = grid.cell_at(node);
    const int reach = static_cast<int>(gain_radius / res) + 1;
    const double r2 = gain_radius * gain_radius;
    int count = 0;
    for (int y = std::max(0, nc.y - reach); y <= std::min(grid.height() - 1, nc.y + reach); ++y) {
        for (int x = std::max(0, nc.x - reach); x <= std::min(grid.width() - 1, nc.x + reach); ++x) {
            const Cell c{x, y};
            if (grid.at(c) != CellState::Unknown) continue;
            const geom::Point2 center = grid.cell_center(c);
            const double dx = center.x - node.x;
            const double dy = center.y - node.y;
            if (dx * dx + dy * dy > r2) continue;
            if (is_line_free(grid, node, center)) ++count;
        }
    }
    return count;
}

}  // namespace hullgain::grid
