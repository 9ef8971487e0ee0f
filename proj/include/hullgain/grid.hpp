#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hullgain/geom.hpp"

namespace hullgain::sim {
struct SensorScan;
}

namespace hullgain::grid {

enum class CellState : std::uint8_t { Unknown, Free, Occupied };

struct Cell {
    int x = 0;
    int y = 0;
    bool operator==(const Cell& o) const = default;
};

/// Robot map: a 2D grid of Unknown/Free/Occupied cells. Knowledge is
/// monotone: Occupied never reverts, and no cell returns to Unknown.
class OccupancyGrid {
public:
    OccupancyGrid(double resolution, geom::Point2 origin, int width, int height);

    double resolution() const { return resolution_; }
    const geom::Point2& origin() const { return origin_; }
    int width() const { return width_; }
    int height() const { return height_; }

    bool in_bounds(const Cell& c) const {
        return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
    }
    bool in_bounds(const geom::Point2& p) const;

    Cell cell_at(const geom::Point2& p) const;  // throws when out of bounds
    geom::Point2 cell_center(const Cell& c) const;

    CellState at(const Cell& c) const { return cells_[index(c)]; }
    void set(const Cell& c, CellState state);

    int count(CellState state) const;

    std::string to_ascii() const;
    static OccupancyGrid from_ascii(const std::string& text);

private:
    size_t index(const Cell& c) const { return static_cast<size_t>(c.y) * width_ + c.x; }

    double resolution_;
    geom::Point2 origin_;
    int width_;
    int height_;
    std::vector<CellState> cells_;
};

/// Cells traversed by the segment from->to in order, both endpoints
/// included (grid DDA). Throws when either endpoint is out of bounds.
std::vector<Cell> raycast(const OccupancyGrid& grid, const geom::Point2& from,
                          const geom::Point2& to);

/// Visits traversed cells in order; stops early when fn returns false.
template <typename F>
void raycast_visit(const OccupancyGrid& grid, const geom::Point2& from, const geom::Point2& to,
                   F&& fn);

/// Marches from `from` along `angle`, visiting every cell whose entry
/// distance is <= max_dist as fn(cell, entry_distance). Leaves the map at
/// the first out-of-bounds cell or when fn returns false. The simulator's
/// beams and scan integration share this traversal so their cell sequences
/// match exactly.
template <typename Geometry, typename F>
void ray_march(const Geometry& geo, const geom::Point2& from, double angle, double max_dist,
               F&& fn);

/// True when no traversed cell is Occupied.
bool is_line_free(const OccupancyGrid& grid, const geom::Point2& a, const geom::Point2& b);

/// Applies one sensor sweep: traversed cells become Free, hit cells become
/// Occupied. Beams that pass a penetrable hit keep marking behind it.
void integrate_scan(OccupancyGrid& grid, const geom::Point2& pose, const sim::SensorScan& scan);

/// Baseline volumetric gain: Unknown cells within gain_radius of the node
/// that have an obstacle-free straight line to it.
int unknown_gain(const OccupancyGrid& grid, const geom::Point2& node, double gain_radius);

// --- inline DDA -----------------------------------------------------------

template <typename F>
void raycast_visit(const OccupancyGrid& grid, const geom::Point2& from, const geom::Point2& to,
                   F&& fn) {
    const Cell start = grid.cell_at(from);
    const Cell target = grid.cell_at(to);
    Cell cur = start;
    if (!fn(cur)) return;
    if (cur == target) return;

    const double res = grid.resolution();
    const geom::Point2 d = to - from;
    const int step_x = d.x > 0 ? 1 : (d.x < 0 ? -1 : 0);
    const int step_y = d.y > 0 ? 1 : (d.y < 0 ? -1 : 0);
    const double inf = std::numeric_limits<double>::infinity();
    // Distance along the ray (in units of |d|) to the next cell boundary.
    const auto boundary_t = [&](int cell_coord, double origin_coord, double from_coord,
                                double delta, int step) {
        if (step == 0) return inf;
        const double edge = origin_coord + (cell_coord + (step > 0 ? 1 : 0)) * res;
        return (edge - from_coord) / delta;
    };
    double t_max_x = boundary_t(cur.x, grid.origin().x, from.x, d.x, step_x);
    double t_max_y = boundary_t(cur.y, grid.origin().y, from.y, d.y, step_y);
    const double t_delta_x = step_x ? res / std::abs(d.x) : inf;
    const double t_delta_y = step_y ? res / std::abs(d.y) : inf;

    int guard = std::abs(target.x - cur.x) + std::abs(target.y - cur.y) + 4;
    while (guard-- > 0) {
        if (t_max_x <= t_max_y) {
            cur.x += step_x;
            t_max_x += t_delta_x;
        } else {
            cur.y += step_y;
            t_max_y += t_delta_y;
        }
        if (!grid.in_bounds(cur)) return;
        if (!fn(cur)) return;
        if (cur == target) return;
    }
}

template <typename Geometry, typename F>
void ray_march(const Geometry& geo, const geom::Point2& from, double angle, double max_dist,
               F&& fn) {
    const double res = geo.resolution();
    const geom::Point2 origin = geo.origin();
    Cell cur{static_cast<int>((from.x - origin.x) / res),
             static_cast<int>((from.y - origin.y) / res)};
    if (!geo.in_bounds(cur)) throw std::invalid_argument("ray_march: start out of bounds");
    if (!fn(cur, 0.0)) return;

    const geom::Point2 dir{std::cos(angle), std::sin(angle)};
    const int step_x = dir.x > 0 ? 1 : (dir.x < 0 ? -1 : 0);
    const int step_y = dir.y > 0 ? 1 : (dir.y < 0 ? -1 : 0);
    const double inf = std::numeric_limits<double>::infinity();
    const auto boundary_t = [&](int cell_coord, double origin_coord, double from_coord,
                                double delta, int step) {
        if (step == 0) return inf;
        const double edge = origin_coord + (cell_coord + (step > 0 ? 1 : 0)) * res;
        return (edge - from_coord) / delta;
    };
    double t_max_x = boundary_t(cur.x, origin.x, from.x, dir.x, step_x);
    double t_max_y = boundary_t(cur.y, origin.y, from.y, dir.y, step_y);
    const double t_delta_x = step_x ? res / std::abs(dir.x) : inf;
    const double t_delta_y = step_y ? res / std::abs(dir.y) : inf;

    long guard = static_cast<long>(max_dist / res) * 2 + 8;
    while (guard-- > 0) {
        double t_enter;
        if (t_max_x <= t_max_y) {
            t_enter = t_max_x;
            cur.x += step_x;
            t_max_x += t_delta_x;
        } else {
            t_enter = t_max_y;
            cur.y += step_y;
            t_max_y += t_delta_y;
        }
        if (t_enter > max_dist) return;
        if (!geo.in_bounds(cur)) return;
        if (!fn(cur, t_enter)) return;
    }
}

}  // namespace hullgain::grid
