#pragma once

#include <map>
#include <string>
#include <vector>

#include "hullgain/grid.hpp"

namespace hullgain::sim {

enum class TerrainType : std::uint8_t {
    Free,
    Solid,       // blocks motion and sensing
    Penetrable,  // blocks motion, lets beams pass (railing, shrub, ditch)
};

/// Ground-truth world. Cell (0,0) sits at world origin (0,0); the outer
/// ring of cells is always Solid.
class World {
public:
    World(double resolution, int width, int height);

    static World from_ascii(const std::string& text);
    static World load_file(const std::string& path);
    std::string to_ascii() const;

    double resolution() const { return resolution_; }
    geom::Point2 origin() const { return {0.0, 0.0}; }
    int width() const { return width_; }
    int height() const { return height_; }
    double width_m() const { return width_ * resolution_; }
    double height_m() const { return height_ * resolution_; }
    const geom::Point2& spawn() const { return spawn_; }

    bool in_bounds(const grid::Cell& c) const {
        return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
    }
    TerrainType at(const grid::Cell& c) const { return cells_[index(c)]; }
    TerrainType at_point(const geom::Point2& p) const;
    grid::Cell cell_at(const geom::Point2& p) const;
    geom::Point2 cell_center(const grid::Cell& c) const;

    // Builder helpers; rectangles are half-open in meters.
    void fill_rect(double x0, double y0, double x1, double y1, TerrainType type);
    void set_spawn(const geom::Point2& p);

    /// Checks spawn-on-Free plus the solid boundary ring; throws on
    /// violation.
    void validate() const;

    /// Fresh all-Unknown robot map with matching geometry.
    grid::OccupancyGrid make_grid() const;

private:
    size_t index(const grid::Cell& c) const { return static_cast<size_t>(c.y) * width_ + c.x; }

    double resolution_;
    int width_;
    int height_;
    std::vector<TerrainType> cells_;
    geom::Point2 spawn_;
};

struct SensorHit {
    double range = 0.0;  // exact entry distance into the hit cell
    grid::Cell cell;
    TerrainType type = TerrainType::Solid;
};

struct SensorBeam {
    double angle = 0.0;
    double end_range = 0.0;  // solid-hit range, or max_range if unobstructed
    std::vector<SensorHit> hits;
};

struct SensorScan {
    geom::Point2 pose;
    double max_range = 0.0;
    std::vector<SensorBeam> beams;
};

/// Casts n_beams evenly spaced rays. Solid cells terminate a beam;
/// penetrable cells are recorded as hits and the beam continues. Throws if
/// the pose is not on a Free cell.
SensorScan sense(const World& world, const geom::Point2& pose, int n_beams, double max_range);

/// Free cells 4-connected to the spawn.
std::vector<bool> reachable_free(const World& world);
int reachable_free_count(const World& world);

const std::vector<std::string>& builtin_world_names();
World builtin_world(const std::string& name);

/// Axis-aligned box, used to describe world regions of interest.
struct Region {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    bool contains(const geom::Point2& p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
};

/// Interior of the railing pocket in `railing_pocket` (everything behind
/// the railing line), for experiment bookkeeping.
Region railing_pocket_region();
/// The part of the pocket that no straight beam from the main room can
/// reach; it must be visited to be mapped.
Region railing_pocket_hidden_region();
/// Pose in front of the railing used by gain-field comparisons.
geom::Point2 railing_pocket_checkpoint();

}  // namespace hullgain::sim
