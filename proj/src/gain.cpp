#include "hullgain/gain.hpp"

#include <algorithm>
#include <cmath>

namespace hullgain::gain {

namespace {

bool edge_allows(const geom::ConcaveHull& hull, int edge, EdgeRule rule) {
    const int n = hull.size();
    const geom::NodeLabel la = hull.boundary[edge].label;
    const geom::NodeLabel lb = hull.boundary[(edge + 1) % n].label;
    if (rule == EdgeRule::Both) {
        return geom::is_passable_label(la) && geom::is_passable_label(lb);
    }
    return geom::is_passable_label(la) || geom::is_passable_label(lb);
}

// Strict double sign test from the crossing check; returns the parameter
// of the intersection along voxel->node, or nothing.
std::optional<double> crossing_param(const geom::Point2& voxel, const geom::Point2& node,
                                     const geom::Point2& a, const geom::Point2& b) {
    const double s1 = geom::cross(voxel, node, a);
    const double s2 = geom::cross(voxel, node, b);
    if (!(s1 * s2 < 0.0)) return std::nullopt;
    const double s3 = geom::cross(a, b, voxel);
    const double s4 = geom::cross(a, b, node);
    if (!(s3 * s4 < 0.0)) return std::nullopt;
    const double denom = geom::cross(node - voxel, b - a);
    if (denom == 0.0) return std::nullopt;
    return geom::cross(a - voxel, b - a) / denom;
}

}  // namespace

bool check_intersection(const geom::ConcaveHull& hull, const geom::Point2& node,
                        const geom::Point2& voxel, EdgeRule rule, GainStats* stats) {
    const int n = hull.size();
    double best_t = -1.0;
    int best_edge = -1;
    for (int e = 0; e < n; ++e) {
        const auto t = crossing_param(voxel, node, hull.vertex(e), hull.vertex((e + 1) % n));
        if (t && *t > best_t) {
            best_t = *t;
            best_edge = e;
        }
    }
    if (best_edge < 0) {
        if (stats) ++stats->no_crossing;
        return false;
    }
    return edge_allows(hull, best_edge, rule);
}

namespace {

// Per-node angular index over hull edges: a properly crossing edge must
// subtend the voxel's direction as seen from the node, so candidate edges
// come from the direction's bin and the exact sign tests run on those only.
// Scratch storage is reused across nodes to avoid per-node allocation.
class EdgeFan {
public:
    void rebuild(const geom::ConcaveHull& hull, const geom::Point2& node) {
        hull_ = &hull;
        node_ = node;
        const int n = hull.size();
        bins_ = 1;
        while (bins_ < 2 * n && bins_ < 512) bins_ <<= 1;
        counts_.assign(bins_ + 1, 0);
        spans_.clear();
        spans_.reserve(n);
        for (int e = 0; e < n; ++e) {
            const geom::Point2& a = hull.vertex(e);
            const geom::Point2& b = hull.vertex((e + 1) % n);
            // A node collinear with the edge cannot properly cross it.
            if (std::abs(geom::cross(a, b, node)) <= geom::kEpsGeom) continue;
            double alpha = std::atan2(a.y - node.y, a.x - node.x);
            double beta = std::atan2(b.y - node.y, b.x - node.x);
            double span = beta - alpha;
            if (span > M_PI) span -= 2.0 * M_PI;
            if (span < -M_PI) span += 2.0 * M_PI;
            if (span < 0.0) {
                std::swap(alpha, beta);
                span = -span;
            }
            const int lo = bin_of(alpha);
            const int count = static_cast<int>(span / (2.0 * M_PI) * bins_) + 2;
            spans_.push_back({e, lo, count});
            for (int k = 0; k <= count; ++k) counts_[((lo + k) & (bins_ - 1)) + 1]++;
        }
        for (int b = 0; b < bins_; ++b) counts_[b + 1] += counts_[b];
        items_.resize(counts_[bins_]);
        fill_ = counts_;
        for (const auto& s : spans_) {
            for (int k = 0; k <= s.count; ++k) {
                items_[fill_[(s.lo + k) & (bins_ - 1)]++] = s.edge;
            }
        }
    }

    bool crosses_passable(const geom::Point2& voxel, EdgeRule rule, GainStats* stats) const {
        const double theta = std::atan2(voxel.y - node_.y, voxel.x - node_.x);
        double best_t = -1.0;
        int best_edge = -1;
        const int n = hull_->size();
        const int b = bin_of(theta);
        for (int i = counts_[b]; i < counts_[b + 1]; ++i) {
            const int e = items_[i];
            const auto t =
                crossing_param(voxel, node_, hull_->vertex(e), hull_->vertex((e + 1) % n));
            if (t && *t > best_t) {
                best_t = *t;
                best_edge = e;
            }
        }
        if (best_edge < 0) {
            if (stats) ++stats->no_crossing;
            return false;
        }
        return edge_allows(*hull_, best_edge, rule);
    }

private:
    struct Span {
        int edge, lo, count;
    };

    int bin_of(double angle) const {
        const double norm = angle < 0.0 ? angle + 2.0 * M_PI : angle;
        int b = static_cast<int>(norm / (2.0 * M_PI) * bins_);
        return b & (bins_ - 1);
    }

    const geom::ConcaveHull* hull_ = nullptr;
    geom::Point2 node_;
    int bins_ = 0;
    std::vector<Span> spans_;
    std::vector<int> counts_;
    std::vector<int> fill_;
    std::vector<int> items_;
};

}  // namespace

namespace {

// Monotone stand-in for atan2: maps a direction to [0, 4), strictly
// increasing with the true angle. Cheap enough to call per voxel.
double diamond_angle(double dx, double dy) {
    const double denom = std::abs(dx) + std::abs(dy);
    if (denom == 0.0) return 0.0;
    if (dy >= 0.0) return dx >= 0.0 ? dy / denom : 1.0 + (-dx) / denom;
    return dx < 0.0 ? 2.0 + (-dy) / denom : 3.0 + dx / denom;
}

// Inside-hull mask with exactly the crossing-number arithmetic of
// point_in_polygon, computed by scanline instead of per cell.
class InsideMask {
public:
    InsideMask(const geom::ConcaveHull& hull, const grid::OccupancyGrid& grid) : grid_(grid) {
        rows_.resize(grid.height());
        const int n = hull.size();
        for (int y = 0; y < grid.height(); ++y) {
            const double py = grid.cell_center({0, y}).y;
            auto& row = rows_[y];
            for (int i = 0, j = n - 1; i < n; j = i++) {
                const geom::Point2& pi = hull.vertex(i);
                const geom::Point2& pj = hull.vertex(j);
                if ((pi.y > py) != (pj.y > py)) {
                    row.push_back((pj.x - pi.x) * (py - pi.y) / (pj.y - pi.y) + pi.x);
                }
            }
            std::sort(row.begin(), row.end());
        }
    }

    bool inside(const grid::Cell& c) const {
        const auto& row = rows_[c.y];
        const double px = grid_.cell_center(c).x;
        // Crossings strictly right of the center; odd count means inside.
        const auto it = std::upper_bound(row.begin(), row.end(), px);
        return (row.end() - it) & 1;
    }

private:
    const grid::OccupancyGrid& grid_;
    std::vector<std::vector<double>> rows_;
};

// Radial first-crossing diagram around one node. Between consecutive
// vertex directions of a simple polygon the set of edges a ray crosses is
// fixed and radially ordered, so the passability of the nearest crossing
// is constant per interval; every outside voxel then costs one binary
// search. Only edges within the gain radius matter: a crossing on a
// segment shorter than the radius lies within the radius.
class RadialDiagram {
public:
    // Returns false when the node needs the exact per-voxel fallback.
    bool build(const geom::ConcaveHull& hull, const geom::Point2& node, double radius,
               EdgeRule rule) {
        node_ = node;
        bounds_.clear();
        passable_.clear();
        near_edges_.clear();
        any_passable_ = false;

        const int n = hull.size();
        for (int e = 0; e < n; ++e) {
            const geom::Point2& a = hull.vertex(e);
            const geom::Point2& b = hull.vertex((e + 1) % n);
            if (std::min(a.x, b.x) > node.x + radius || std::max(a.x, b.x) < node.x - radius ||
                std::min(a.y, b.y) > node.y + radius || std::max(a.y, b.y) < node.y - radius) {
                continue;
            }
            if (geom::point_segment_distance(node, a, b) > radius) continue;
            // Collinear edges cannot be properly crossed.
            if (std::abs(geom::cross(a, b, node)) <= geom::kEpsGeom) continue;
            near_edges_.push_back(e);
        }
        if (near_edges_.empty()) return true;  // whole disc inside (or no crossing): gain 0

        // Vertex direction events split the circle into intervals.
        events_.clear();
        for (int e : near_edges_) {
            const geom::Point2& a = hull.vertex(e);
            const geom::Point2& b = hull.vertex((e + 1) % n);
            events_.push_back(diamond_angle(a.x - node.x, a.y - node.y));
            events_.push_back(diamond_angle(b.x - node.x, b.y - node.y));
        }
        std::sort(events_.begin(), events_.end());
        events_.erase(std::unique(events_.begin(), events_.end()), events_.end());

        const int m = static_cast<int>(events_.size());
        bounds_.reserve(m);
        passable_.reserve(m);
        for (int i = 0; i < m; ++i) {
            const double lo = events_[i];
            const double hi = i + 1 < m ? events_[i + 1] : events_[0] + 4.0;
            const double mid = 0.5 * (lo + hi);
            const double ang = mid >= 4.0 ? mid - 4.0 : mid;
            // Probe ray at the interval midpoint.
            const geom::Point2 dir = undiamond(ang);
            const geom::Point2 far{node.x + dir.x * 1e5, node.y + dir.y * 1e5};
            // crossing_param parameterizes far->node, so the largest value
            // is the crossing nearest the node: the hull exit of this ray.
            double best_t = -1.0;
            int best_edge = -1;
            for (int e : near_edges_) {
                const auto t = crossing_param(far, node_, hull.vertex(e), hull.vertex((e + 1) % n));
                if (t && *t > best_t) {
                    best_t = *t;
                    best_edge = e;
                }
            }
            bool pass = false;
            if (best_edge >= 0) pass = edge_allows(hull, best_edge, rule);
            bounds_.push_back(lo);
            passable_.push_back(pass);
            any_passable_ = any_passable_ || pass;
        }
        return true;
    }

    bool any_passable() const { return any_passable_; }

    bool passable_toward(const geom::Point2& voxel) const {
        if (bounds_.empty()) return false;
        const double ang = diamond_angle(voxel.x - node_.x, voxel.y - node_.y);
        auto it = std::upper_bound(bounds_.begin(), bounds_.end(), ang);
        const size_t idx = it == bounds_.begin() ? bounds_.size() - 1 : (it - bounds_.begin()) - 1;
        return passable_[idx];
    }

private:
    static geom::Point2 undiamond(double t) {
        // Inverse of diamond_angle up to normalization.
        double dx, dy;
        if (t < 1.0) {
            dy = t;
            dx = 1.0 - t;
        } else if (t < 2.0) {
            dy = 2.0 - t;
            dx = -(t - 1.0);
        } else if (t < 3.0) {
            dy = -(t - 2.0);
            dx = -(3.0 - t);
        } else {
            dy = -(4.0 - t);
            dx = t - 3.0;
        }
        const double norm = std::hypot(dx, dy);
        return {dx / norm, dy / norm};
    }

    geom::Point2 node_;
    std::vector<int> near_edges_;
    std::vector<double> events_;
    std::vector<double> bounds_;
    std::vector<bool> passable_;
    bool any_passable_ = false;
};

}  // namespace

std::vector<int> graph_gain(const geom::ConcaveHull& hull, rrg::Rrg& rrg,
                            const grid::OccupancyGrid& grid, const GainParams& params,
                            GainStats* stats) {
    std::vector<int> gains(rrg.nodes.size(), 0);
    if (hull.size() < 3) return gains;

    const InsideMask mask(hull, grid);
    const double res = grid.resolution();
    const int reach = static_cast<int>(params.gain_radius / res) + 1;
    const double r2 = params.gain_radius * params.gain_radius;

    EdgeFan fan;
    RadialDiagram diagram;
    for (auto& node : rrg.nodes) {
        int count = 0;
        const grid::Cell nc = grid.cell_at(node.position);
        // A node outside the hull lacks the interval structure; use the
        // exact per-voxel tests there.
        const bool node_inside = mask.inside(nc) || geom::point_in_polygon(node.position, hull);
        bool use_diagram = false;
        if (node_inside) {
            use_diagram = diagram.build(hull, node.position, params.gain_radius, params.edge_rule);
            if (use_diagram && !diagram.any_passable()) {
                node.volumetric_gain = 0;
                gains[node.id] = 0;
                continue;
            }
        }
        if (!use_diagram) fan.rebuild(hull, node.position);

        for (int y = std::max(0, nc.y - reach); y <= std::min(grid.height() - 1, nc.y + reach); ++y) {
            for (int x = std::max(0, nc.x - reach); x <= std::min(grid.width() - 1, nc.x + reach);
                 ++x) {
                const grid::Cell c{x, y};
                const geom::Point2 center = grid.cell_center(c);
                const double dx = center.x - node.position.x;
                const double dy = center.y - node.position.y;
                if (dx * dx + dy * dy > r2) continue;
                if (mask.inside(c)) continue;
                if (use_diagram) {
                    if (diagram.passable_toward(center)) ++count;
                } else if (fan.crosses_passable(center, params.edge_rule, stats)) {
                    ++count;
                }
            }
        }
        node.volumetric_gain = count;
        gains[node.id] = count;
    }
    return gains;
}

std::vector<double> exploration_gain_nbvp(const std::vector<BranchNode>& branch,
                                          const GainParams& params) {
    std::vector<double> out(branch.size(), 0.0);
    if (branch.empty()) return out;
    out[0] = branch[0].volumetric_gain;
    for (size_t k = 1; k < branch.size(); ++k) {
        const double d = geom::dist(branch[k - 1].position, branch[k].position);
        out[k] = out[k - 1] + branch[k].volumetric_gain * std::exp(-params.lambda * d);
    }
    return out;
}

double exploration_gain_dsvp(const std::vector<BranchNode>& branch,
                             const geom::Point2& prev_branch_dir, const GainParams& params) {
    if (branch.empty()) return 0.0;
    double sum = 0.0;
    double path = 0.0;
    for (size_t i = 0; i < branch.size(); ++i) {
        if (i > 0) path += geom::dist(branch[i - 1].position, branch[i].position);
        sum += branch[i].volumetric_gain * std::exp(-params.lambda2 * path);
    }
    double similarity = 0.0;
    const geom::Point2 tip_dir = branch.back().position - branch.front().position;
    const double tip_len = geom::norm(tip_dir);
    const double prev_len = geom::norm(prev_branch_dir);
    if (tip_len > geom::kEpsGeom && prev_len > geom::kEpsGeom) {
        const double cosv =
            std::clamp(geom::dot(tip_dir, prev_branch_dir) / (tip_len * prev_len), -1.0, 1.0);
        similarity = std::acos(cosv);
    }
    return std::exp(-params.lambda1 * similarity) * sum;
}

std::optional<int> select_best(const rrg::Rrg& rrg, const GainParams& params) {
    if (rrg.nodes.empty()) return std::nullopt;
    const auto sp = rrg.shortest_paths(rrg.root);
    int best = -1;
    for (const auto& node : rrg.nodes) {
        if (node.visited) continue;
        if (!std::isfinite(sp.dist[node.id])) continue;
        if (best < 0) {
            best = node.id;
            continue;
        }
        const rrg::RrgNode& cur = rrg.nodes[best];
        if (node.exploration_gain > cur.exploration_gain ||
            (node.exploration_gain == cur.exploration_gain &&
             (sp.dist[node.id] < sp.dist[best] ||
              (sp.dist[node.id] == sp.dist[best] && node.id < best)))) {
            best = node.id;
        }
    }
    if (best < 0 || rrg.nodes[best].exploration_gain < params.gain_threshold) {
        return std::nullopt;
    }
    return best;
}

}  // namespace hullgain::gain
