#include "hullgain/sim.hpp"

#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace hullgain::sim {

World::World(double resolution, int width, int height)
    : resolution_(resolution), width_(width), height_(height) {
    if (resolution <= 0.0 || width < 3 || height < 3) {
        throw std::invalid_argument("World: bad dimensions");
    }
    cells_.assign(static_cast<size_t>(width) * height, TerrainType::Free);
    // Solid outer ring.
    for (int x = 0; x < width; ++x) {
        cells_[index({x, 0})] = TerrainType::Solid;
        cells_[index({x, height - 1})] = TerrainType::Solid;
    }
    for (int y = 0; y < height; ++y) {
        cells_[index({0, y})] = TerrainType::Solid;
        cells_[index({width - 1, y})] = TerrainType::Solid;
    }
    spawn_ = cell_center({width / 2, height / 2});
}

TerrainType World::at_point(const geom::Point2& p) const {
    return at(cell_at(p));
}

grid::Cell World::cell_at(const geom::Point2& p) const {
    const grid::Cell c{static_cast<int>(p.x / resolution_), static_cast<int>(p.y / resolution_)};
    if (!in_bounds(c)) throw std::invalid_argument("World: point out of bounds");
    return c;
}

geom::Point2 World::cell_center(const grid::Cell& c) const {
    return {(c.x + 0.5) * resolution_, (c.y + 0.5) * resolution_};
}

void World::fill_rect(double x0, double y0, double x1, double y1, TerrainType type) {
    const int cx0 = std::max(0, static_cast<int>(std::floor(x0 / resolution_ + 1e-9)));
    const int cy0 = std::max(0, static_cast<int>(std::floor(y0 / resolution_ + 1e-9)));
    const int cx1 = std::min(width_, static_cast<int>(std::ceil(x1 / resolution_ - 1e-9)));
    const int cy1 = std::min(height_, static_cast<int>(std::ceil(y1 / resolution_ - 1e-9)));
    for (int y = cy0; y < cy1; ++y) {
        for (int x = cx0; x < cx1; ++x) cells_[index({x, y})] = type;
    }
}

void World::set_spawn(const geom::Point2& p) {
    spawn_ = p;
}

void World::validate() const {
    if (at_point(spawn_) != TerrainType::Free) {
        throw std::invalid_argument("World: spawn is not on a free cell");
    }
    for (int x = 0; x < width_; ++x) {
        if (at({x, 0}) != TerrainType::Solid || at({x, height_ - 1}) != TerrainType::Solid) {
            throw std::invalid_argument("World: boundary must be solid");
        }
    }
    for (int y = 0; y < height_; ++y) {
        if (at({0, y}) != TerrainType::Solid || at({width_ - 1, y}) != TerrainType::Solid) {
            throw std::invalid_argument("World: boundary must be solid");
        }
    }
}

grid::OccupancyGrid World::make_grid() const {
    return grid::OccupancyGrid(resolution_, {0.0, 0.0}, width_, height_);
}

std::string World::to_ascii() const {
    std::ostringstream out;
    out << "resolution=" << resolution_ << "\n";
    const grid::Cell spawn_cell = cell_at(spawn_);
    for (int y = height_ - 1; y >= 0; --y) {
        for (int x = 0; x < width_; ++x) {
            if (spawn_cell.x == x && spawn_cell.y == y) {
                out << 'S';
                continue;
            }
            switch (at({x, y})) {
                case TerrainType::Free: out << '.'; break;
                case TerrainType::Solid: out << '#'; break;
                case TerrainType::Penetrable: out << '='; break;
            }
        }
        out << "\n";
    }
    return out.str();
}

World World::from_ascii(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("resolution=", 0) != 0) {
        throw std::invalid_argument("world ascii: missing resolution header");
    }
    const double resolution = std::stod(line.substr(11));
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (!line.empty()) rows.push_back(line);
    }
    if (rows.size() < 3) throw std::invalid_argument("world ascii: too few rows");
    const int height = static_cast<int>(rows.size());
    const int width = static_cast<int>(rows[0].size());
    World world(resolution, width, height);
    bool seen_spawn = false;
    for (int y = 0; y < height; ++y) {
        const std::string& row = rows[height - 1 - y];
        if (static_cast<int>(row.size()) != width) {
            throw std::invalid_argument("world ascii: ragged rows");
        }
        for (int x = 0; x < width; ++x) {
            TerrainType type;
            switch (row[x]) {
                case '.': type = TerrainType::Free; break;
                case '#': type = TerrainType::Solid; break;
                case '=': type = TerrainType::Penetrable; break;
                case 'S':
                    type = TerrainType::Free;
                    world.set_spawn(world.cell_center({x, y}));
                    seen_spawn = true;
                    break;
                default: throw std::invalid_argument("world ascii: bad cell char");
            }
            world.cells_[world.index({x, y})] = type;
        }
    }
    if (!seen_spawn) throw std::invalid_argument("world ascii: no spawn marker");
    world.validate();
    return world;
}

World World::load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("world: cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return from_ascii(buf.str());
}

SensorScan sense(const World& world, const geom::Point2& pose, int n_beams, double max_range) {
    if (world.at_point(pose) != TerrainType::Free) {
        throw std::invalid_argument("sense: pose is not on a free cell");
    }
    if (n_beams < 1 || max_range <= 0.0) throw std::invalid_argument("sense: bad parameters");
    SensorScan scan;
    scan.pose = pose;
    scan.max_range = max_range;
    scan.beams.resize(n_beams);
    for (int k = 0; k < n_beams; ++k) {
        SensorBeam& beam = scan.beams[k];
        beam.angle = 2.0 * M_PI * k / n_beams;
        beam.end_range = max_range;
        grid::ray_march(world, pose, beam.angle, max_range,
                        [&](const grid::Cell& c, double t_enter) {
                            const TerrainType type = world.at(c);
                            if (type == TerrainType::Solid) {
                                beam.hits.push_back({t_enter, c, type});
                                beam.end_range = t_enter;
                                return false;
                            }
                            if (type == TerrainType::Penetrable) {
                                beam.hits.push_back({t_enter, c, type});
                            }
                            return true;
                        });
    }
    return scan;
}

std::vector<bool> reachable_free(const World& world) {
    std::vector<bool> seen(static_cast<size_t>(world.width()) * world.height(), false);
    const grid::Cell start = world.cell_at(world.spawn());
    std::queue<grid::Cell> queue;
    queue.push(start);
    seen[start.y * world.width() + start.x] = true;
    while (!queue.empty()) {
        const grid::Cell c = queue.front();
        queue.pop();
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
            const grid::Cell n{c.x + dx[d], c.y + dy[d]};
            if (!world.in_bounds(n)) continue;
            const size_t idx = static_cast<size_t>(n.y) * world.width() + n.x;
            if (seen[idx] || world.at(n) != TerrainType::Free) continue;
            seen[idx] = true;
            queue.push(n);
        }
    }
    return seen;
}

int reachable_free_count(const World& world) {
    const auto seen = reachable_free(world);
    int n = 0;
    for (const bool b : seen) n += b ? 1 : 0;
    return n;
}

namespace {

constexpr double kRes = 0.2;

World make_empty_room() {
    World world(kRes, 50, 50);  // 10 m x 10 m
    world.set_spawn({5.0, 5.0});
    world.validate();
    return world;
}

// Hall with a railing-backed pocket along its north side. The strip right
// behind the thin railing gets mapped through it as the robot works the
// hall, but walking in means a long detour: an L-bent entry (slot up at
// the far east, then an 8 m tunnel west into the strip), the strip itself,
// and a deep shaft at the far west up into the gallery. Any straight beam
// into the gallery has to thread the 1.6 m shaft across a 5 m band
// (|slope| <= 0.32), so the gallery east of x ~ 7 cannot be sensed from
// reachable space and must be visited on foot. The hall is large relative
// to the sliding window, so the local planner genuinely leaves the area
// between visits.
World make_railing_pocket() {
    World world(kRes, 280, 200);  // 56 m x 40 m
    // Everything above the hall starts solid; the pocket is carved out.
    world.fill_rect(0.0, 22.0, 56.0, 40.0, TerrainType::Solid);
    world.fill_rect(4.0, 22.0, 24.0, 23.2, TerrainType::Penetrable);  // railing
    world.fill_rect(4.0, 23.2, 24.0, 25.6, TerrainType::Free);        // strip
    world.fill_rect(4.4, 25.6, 6.0, 30.6, TerrainType::Free);         // shaft
    world.fill_rect(4.0, 30.6, 24.0, 33.0, TerrainType::Free);        // gallery
    world.fill_rect(24.0, 23.2, 32.0, 24.8, TerrainType::Free);       // entry tunnel
    world.fill_rect(30.4, 22.0, 32.0, 23.2, TerrainType::Free);       // entry slot

    // Hall furniture: blocks that turn the open space into corridors.
    world.fill_rect(12.0, 0.4, 17.0, 14.0, TerrainType::Solid);
    world.fill_rect(36.0, 6.0, 42.0, 22.0, TerrainType::Solid);
    world.fill_rect(44.0, 0.4, 50.0, 16.0, TerrainType::Solid);

    world.set_spawn({8.0, 18.0});
    world.validate();
    return world;
}

// Corridor maze, desk scale. Two long horizontal corridors, three vertical
// connectors and a room in the north-east block.
World make_corridors() {
    World world(kRes, 300, 200);  // 60 m x 40 m
    world.fill_rect(0.0, 0.0, 60.0, 40.0, TerrainType::Solid);
    // Horizontal corridors.
    world.fill_rect(2.0, 4.0, 58.0, 7.0, TerrainType::Free);
    world.fill_rect(2.0, 19.0, 58.0, 22.0, TerrainType::Free);
    world.fill_rect(2.0, 33.0, 58.0, 36.0, TerrainType::Free);
    // Vertical connectors.
    world.fill_rect(5.0, 4.0, 8.0, 36.0, TerrainType::Free);
    world.fill_rect(28.0, 4.0, 31.0, 36.0, TerrainType::Free);
    world.fill_rect(52.0, 4.0, 55.0, 36.0, TerrainType::Free);
    // A room off the middle corridor.
    world.fill_rect(36.0, 22.0, 48.0, 31.0, TerrainType::Free);
    world.fill_rect(36.0, 22.0, 48.0, 22.4, TerrainType::Solid);
    world.fill_rect(40.0, 22.0, 43.0, 22.4, TerrainType::Free);  // room doorway
    world.set_spawn({3.5, 5.5});
    world.validate();
    return world;
}

// Two rooms joined by a gap narrower than twice the robot size (0.8 m for
// the default 0.6 m robot).
World make_narrow_gap() {
    World world(kRes, 80, 50);  // 16 m x 10 m
    world.fill_rect(7.6, 0.0, 8.4, 10.0, TerrainType::Solid);
    world.fill_rect(7.6, 4.6, 8.4, 5.4, TerrainType::Free);
    world.set_spawn({4.0, 5.0});
    world.validate();
    return world;
}

}  // namespace

const std::vector<std::string>& builtin_world_names() {
    static const std::vector<std::string> names{"empty_room", "railing_pocket", "corridors",
                                                "narrow_gap"};
    return names;
}

World builtin_world(const std::string& name) {
    if (name == "empty_room") return make_empty_room();
    if (name == "railing_pocket") return make_railing_pocket();
    if (name == "corridors") return make_corridors();
    if (name == "narrow_gap") return make_narrow_gap();
    throw std::invalid_argument("unknown builtin world: " + name);
}

Region railing_pocket_region() {
    return {4.0, 22.0, 32.0, 33.0};
}

Region railing_pocket_hidden_region() {
    // East side of the gallery, beyond the reach of any beam threading the
    // shaft.
    return {8.5, 30.8, 23.5, 32.8};
}

geom::Point2 railing_pocket_checkpoint() {
    return {14.0, 17.0};
}

}  // namespace hullgain::sim
