#include "hullgain/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_map>

namespace hullgain::geom {

double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }

double norm(const Point2& p) { return std::hypot(p.x, p.y); }

double dist(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }

double cross(const Point2& o, const Point2& a, const Point2& b) { return cross(a - o, b - o); }

const char* to_string(NodeLabel label) {
    switch (label) {
        case NodeLabel::Successful: return "successful";
        case NodeLabel::Occupied: return "occupied";
        case NodeLabel::Unknown: return "unknown";
        case NodeLabel::BeyondWindow: return "beyond_window";
    }
    return "?";
}

bool is_passable_label(NodeLabel label) {
    return label == NodeLabel::Successful || label == NodeLabel::Unknown;
}

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    if (dist(a, b) <= kEpsGeom || dist(c, d) <= kEpsGeom) {
        throw std::invalid_argument("segments_intersect: zero-length segment");
    }
    const double s1 = cross(a, b, c);
    const double s2 = cross(a, b, d);
    const double s3 = cross(c, d, a);
    const double s4 = cross(c, d, b);
    return s1 * s2 < 0.0 && s3 * s4 < 0.0;
}

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 <= kEpsGeom * kEpsGeom) return dist(p, a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, {a.x + t * ab.x, a.y + t * ab.y});
}

bool point_in_polygon(const Point2& p, std::span<const Point2> polygon) {
    const int n = static_cast<int>(polygon.size());
    if (n < 3) throw std::invalid_argument("point_in_polygon: polygon needs >= 3 vertices");
    // Boundary band counts as inside.
    for (int i = 0, j = n - 1; i < n; j = i++) {
        if (point_segment_distance(p, polygon[j], polygon[i]) <= kEpsGeom) return true;
    }
    bool inside = false;
    for (int i = 0, j = n - 1; i < n; j = i++) {
        const Point2& pi = polygon[i];
        const Point2& pj = polygon[j];
        if ((pi.y > p.y) != (pj.y > p.y) &&
            p.x < (pj.x - pi.x) * (p.y - pi.y) / (pj.y - pi.y) + pi.x) {
            inside = !inside;
        }
    }
    return inside;
}

bool point_in_polygon(const Point2& p, const ConcaveHull& hull) {
    std::vector<Point2> poly;
    poly.reserve(hull.boundary.size());
    for (const auto& node : hull.boundary) poly.push_back(node.position);
    return point_in_polygon(p, poly);
}

namespace {

int label_rank(NodeLabel label) {
    switch (label) {
        case NodeLabel::Occupied: return 0;
        case NodeLabel::Successful: return 1;
        case NodeLabel::Unknown: return 2;
        case NodeLabel::BeyondWindow: return 3;
    }
    return 4;
}

std::int64_t cell_key(std::int64_t cx, std::int64_t cy) {
    return cx * 0x9E3779B97F4A7C15LL ^ cy;
}

}  // namespace

std::vector<LabeledNode> dedup_nodes(std::span<const LabeledNode> nodes) {
    std::vector<LabeledNode> out;
    out.reserve(nodes.size());
    std::unordered_map<std::int64_t, std::vector<int>> buckets;
    const double inv = 1.0 / kEpsGeom;
    for (const auto& node : nodes) {
        const auto cx = static_cast<std::int64_t>(std::floor(node.position.x * inv));
        const auto cy = static_cast<std::int64_t>(std::floor(node.position.y * inv));
        int found = -1;
        for (std::int64_t dx = -1; dx <= 1 && found < 0; ++dx) {
            for (std::int64_t dy = -1; dy <= 1 && found < 0; ++dy) {
                auto it = buckets.find(cell_key(cx + dx, cy + dy));
                if (it == buckets.end()) continue;
                for (int idx : it->second) {
                    if (dist(out[idx].position, node.position) <= kEpsGeom) {
                        found = idx;
                        break;
                    }
                }
            }
        }
        if (found >= 0) {
            if (label_rank(node.label) < label_rank(out[found].label)) {
                out[found].label = node.label;
            }
        } else {
            buckets[cell_key(cx, cy)].push_back(static_cast<int>(out.size()));
            out.push_back(node);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Delaunay triangulation: incremental Bowyer-Watson. The three bootstrap
// vertices are treated as points at infinity along fixed directions, so
// incircle and orientation tests involving them reduce to half-plane tests
// and the finished hull is exact.
// ---------------------------------------------------------------------------

namespace {

struct Tri {
    std::array<int, 3> v;  // vertex ids, counter-clockwise
    std::array<int, 3> n;  // neighbor across the edge opposite v[i], -1 if none
    bool alive = true;
};

class Bowyer {
public:
    explicit Bowyer(const std::vector<Point2>& pts) : pts_(pts) {
        // Infinite directions, 120 degrees apart, counter-clockwise.
        const double base = 0.7358;
        for (int i = 0; i < 3; ++i) {
            const double a = base + i * (2.0 * M_PI / 3.0);
            dirs_[i] = {std::cos(a), std::sin(a)};
        }
        tris_.push_back(Tri{{0, 1, 2}, {-1, -1, -1}, true});
    }

    void insert_all(const std::vector<int>& order) {
        for (int id : order) insert(id + 3);
    }

    std::vector<std::array<int, 3>> real_triangles() const {
        std::vector<std::array<int, 3>> out;
        for (const auto& t : tris_) {
            if (!t.alive) continue;
            if (t.v[0] < 3 || t.v[1] < 3 || t.v[2] < 3) continue;
            out.push_back({t.v[0] - 3, t.v[1] - 3, t.v[2] - 3});
        }
        return out;
    }

private:
    bool is_super(int id) const { return id < 3; }
    const Point2& pos(int id) const { return pts_[id - 3]; }

    // Orientation with support for infinite vertices. Positive =
    // counter-clockwise.
    double orient(int ia, int ib, int ic) const {
        const bool sa = is_super(ia), sb = is_super(ib), sc = is_super(ic);
        const int supers = int(sa) + int(sb) + int(sc);
        if (supers == 0) return cross(pos(ia), pos(ib), pos(ic));
        if (supers == 1) {
            if (sa) return cross(dirs_[ia], pos(ib) - pos(ic));
            if (sb) return cross(dirs_[ib], pos(ic) - pos(ia));
            return cross(dirs_[ic], pos(ia) - pos(ib));
        }
        if (supers == 2) {
            if (!sc) return cross(dirs_[ia], dirs_[ib]);
            if (!sa) return cross(dirs_[ib], dirs_[ic]);
            return cross(dirs_[ic], dirs_[ia]);
        }
        return 1.0;  // bootstrap triangle is counter-clockwise by construction
    }

    bool in_circumcircle(const Tri& t, int ip) const {
        const Point2& p = pos(ip);
        int super_slot = -1;
        int super_count = 0;
        for (int i = 0; i < 3; ++i) {
            if (is_super(t.v[i])) {
                super_slot = i;
                ++super_count;
            }
        }
        if (super_count == 0) {
            const Point2& a = pos(t.v[0]);
            const Point2 b = pos(t.v[1]) - a;
            const Point2 c = pos(t.v[2]) - a;
            const double d = 2.0 * cross(b, c);
            if (std::abs(d) < kEpsGeom * kEpsGeom) return true;  // degenerate sliver
            const double b2 = dot(b, b), c2 = dot(c, c);
            const Point2 u = {(c.y * b2 - b.y * c2) / d, (b.x * c2 - c.x * b2) / d};
            const Point2 q = p - a;
            return dot(u, u) - (dot(q, q) - 2.0 * dot(q, u) + dot(u, u)) > 0.0;
        }
        if (super_count == 1) {
            // Limit circle is the half-plane beyond the finite edge; a point
            // exactly on the edge's line counts as inside only when it
            // projects strictly between the endpoints.
            const Point2& a = pos(t.v[(super_slot + 1) % 3]);
            const Point2& b = pos(t.v[(super_slot + 2) % 3]);
            const double side = cross(a, b, p);
            if (std::abs(side) <= kEpsGeom) {
                const double t01 = dot(p - a, b - a) / dot(b - a, b - a);
                return t01 > 0.0 && t01 < 1.0;
            }
            return side > 0.0;
        }
        if (super_count == 2) {
            int real_slot = 0;
            Point2 w{0.0, 0.0};
            for (int i = 0; i < 3; ++i) {
                if (is_super(t.v[i])) {
                    w = w + dirs_[t.v[i]];
                } else {
                    real_slot = i;
                }
            }
            return dot(p - pos(t.v[real_slot]), w) > 0.0;
        }
        return true;
    }

    int locate(int ip) const {
        int cur = last_tri_;
        if (cur < 0 || !tris_[cur].alive) cur = first_alive();
        int guard = static_cast<int>(tris_.size()) * 4 + 16;
        while (guard-- > 0) {
            const Tri& t = tris_[cur];
            int next = -1;
            for (int e = 0; e < 3; ++e) {
                // Edge opposite v[e] runs v[e+1] -> v[e+2]; outside it means
                // the walk continues through that neighbor.
                if (orient(t.v[(e + 1) % 3], t.v[(e + 2) % 3], ip) < -kEpsGeom) {
                    next = t.n[e];
                    break;
                }
            }
            if (next < 0) return cur;
            cur = next;
        }
        // Degenerate walk; fall back to scanning.
        for (int i = 0; i < static_cast<int>(tris_.size()); ++i) {
            if (!tris_[i].alive) continue;
            bool ok = true;
            for (int e = 0; e < 3 && ok; ++e) {
                ok = orient(tris_[i].v[(e + 1) % 3], tris_[i].v[(e + 2) % 3], ip) >= -kEpsGeom;
            }
            if (ok) return i;
        }
        throw std::runtime_error("delaunay: point location failed");
    }

    int first_alive() const {
        for (int i = static_cast<int>(tris_.size()) - 1; i >= 0; --i) {
            if (tris_[i].alive) return i;
        }
        throw std::runtime_error("delaunay: no alive triangle");
    }

    void insert(int ip) {
        const int start = locate(ip);

        // Gather the cavity of triangles whose circumcircle contains ip.
        // Scratch buffers persist across insertions; marks use an epoch
        // stamp so nothing needs clearing.
        ++stamp_;
        mark_.resize(tris_.size() + 8, 0);
        cavity_.clear();
        stack_.clear();
        int seed = start;
        if (!in_circumcircle(tris_[seed], ip)) {
            seed = -1;
            for (int e = 0; e < 3 && seed < 0; ++e) {
                const int nb = tris_[start].n[e];
                if (nb >= 0 && in_circumcircle(tris_[nb], ip)) seed = nb;
            }
            if (seed < 0) {
                for (int i = 0; i < static_cast<int>(tris_.size()) && seed < 0; ++i) {
                    if (tris_[i].alive && in_circumcircle(tris_[i], ip)) seed = i;
                }
            }
            if (seed < 0) throw std::runtime_error("delaunay: empty cavity");
        }
        stack_.push_back(seed);
        mark_[seed] = stamp_;
        while (!stack_.empty()) {
            const int cur = stack_.back();
            stack_.pop_back();
            cavity_.push_back(cur);
            for (int e = 0; e < 3; ++e) {
                const int nb = tris_[cur].n[e];
                if (nb < 0 || mark_[nb] == stamp_) continue;
                if (in_circumcircle(tris_[nb], ip)) {
                    mark_[nb] = stamp_;
                    stack_.push_back(nb);
                }
            }
        }

        // Boundary of the cavity: (a, b, outside-neighbor), oriented so the
        // cavity interior is to the left of a->b.
        ring_.clear();
        for (int ti : cavity_) {
            const Tri& t = tris_[ti];
            for (int e = 0; e < 3; ++e) {
                const int nb = t.n[e];
                if (nb >= 0 && mark_[nb] == stamp_) continue;
                ring_.push_back({t.v[(e + 1) % 3], t.v[(e + 2) % 3], nb});
            }
        }
        for (int ti : cavity_) tris_[ti].alive = false;

        // Fan new triangles from ip over the cavity boundary. Spokes pair
        // up within this ring, so a short linear scan stitches them.
        open_.clear();
        for (const auto& be : ring_) {
            Tri nt;
            nt.v = {be.a, be.b, ip};
            nt.n = {-1, -1, be.outside};
            const int nid = static_cast<int>(tris_.size());
            tris_.push_back(nt);
            if (be.outside >= 0) {
                Tri& ot = tris_[be.outside];
                for (int e = 0; e < 3; ++e) {
                    const int oa = ot.v[(e + 1) % 3];
                    const int ob = ot.v[(e + 2) % 3];
                    if ((oa == be.a && ob == be.b) || (oa == be.b && ob == be.a)) {
                        ot.n[e] = nid;
                        break;
                    }
                }
            }
            for (int spoke = 0; spoke < 2; ++spoke) {
                const int va = spoke == 0 ? be.b : be.a;
                const int slot = spoke == 0 ? 0 : 1;  // neighbor across edge opposite v[slot]
                bool matched = false;
                for (size_t k = 0; k < open_.size(); ++k) {
                    if (open_[k].vertex == va) {
                        tris_[nid].n[slot] = open_[k].tri;
                        tris_[open_[k].tri].n[open_[k].slot] = nid;
                        open_[k] = open_.back();
                        open_.pop_back();
                        matched = true;
                        break;
                    }
                }
                if (!matched) open_.push_back({va, nid, slot});
            }
        }
        last_tri_ = static_cast<int>(tris_.size()) - 1;
    }

    struct BoundaryEdge {
        int a, b, outside;
    };
    struct OpenSpoke {
        int vertex, tri, slot;
    };

    const std::vector<Point2>& pts_;
    std::array<Point2, 3> dirs_;
    std::vector<Tri> tris_;
    int last_tri_ = 0;
    int stamp_ = 0;
    std::vector<int> mark_;
    std::vector<int> cavity_;
    std::vector<int> stack_;
    std::vector<BoundaryEdge> ring_;
    std::vector<OpenSpoke> open_;
};

}  // namespace

Triangulation delaunay(std::span<const Point2> points) {
    std::vector<LabeledNode> tagged(points.size());
    for (size_t i = 0; i < points.size(); ++i) tagged[i].position = points[i];
    const auto unique_nodes = dedup_nodes(tagged);

    Triangulation result;
    result.vertices.reserve(unique_nodes.size());
    for (const auto& node : unique_nodes) result.vertices.push_back(node.position);
    const int n = static_cast<int>(result.vertices.size());
    if (n < 3) throw std::invalid_argument("delaunay: need >= 3 distinct points");

    bool collinear = true;
    for (int i = 2; i < n && collinear; ++i) {
        collinear = std::abs(cross(result.vertices[0], result.vertices[1], result.vertices[i])) <= kEpsGeom;
    }
    if (collinear) throw std::invalid_argument("delaunay: all points collinear");

    // Insert in spatially coherent order so the locate walk stays short.
    double min_x = result.vertices[0].x, max_x = min_x;
    double min_y = result.vertices[0].y, max_y = min_y;
    for (const auto& p : result.vertices) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double extent = std::max({max_x - min_x, max_y - min_y, 1e-6});
    const double cell = extent / std::max(1.0, std::sqrt(static_cast<double>(n)));
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto row = [&](int i) { return static_cast<int>((result.vertices[i].y - min_y) / cell); };
        const int ra = row(a), rb = row(b);
        if (ra != rb) return ra < rb;
        const double xa = result.vertices[a].x, xb = result.vertices[b].x;
        if ((ra & 1) == 0) return xa != xb ? xa < xb : result.vertices[a].y < result.vertices[b].y;
        return xa != xb ? xa > xb : result.vertices[a].y < result.vertices[b].y;
    });

    Bowyer bw(result.vertices);
    bw.insert_all(order);
    result.triangles = bw.real_triangles();

    std::unordered_map<std::int64_t, int> edge_count;
    const auto ekey = [](int a, int b) {
        return static_cast<std::int64_t>(std::min(a, b)) * 1000003LL + std::max(a, b);
    };
    for (const auto& t : result.triangles) {
        for (int e = 0; e < 3; ++e) edge_count[ekey(t[e], t[(e + 1) % 3])]++;
    }
    for (const auto& t : result.triangles) {
        for (int e = 0; e < 3; ++e) {
            const int a = t[e], b = t[(e + 1) % 3];
            if (edge_count[ekey(a, b)] == 1) {
                result.exterior_edges.emplace_back(std::min(a, b), std::max(a, b));
            }
        }
    }
    std::sort(result.exterior_edges.begin(), result.exterior_edges.end());
    result.exterior_edges.erase(
        std::unique(result.exterior_edges.begin(), result.exterior_edges.end()),
        result.exterior_edges.end());
    return result;
}

// ---------------------------------------------------------------------------
// Concave hull peel.
// ---------------------------------------------------------------------------

double ConcaveHull::edge_length(int i) const {
    const int n = size();
    return dist(boundary[i].position, boundary[(i + 1) % n].position);
}

double ConcaveHull::perimeter() const {
    double sum = 0.0;
    for (int i = 0; i < size(); ++i) sum += edge_length(i);
    return sum;
}

ConcaveHull concave_hull(std::span<const LabeledNode> nodes, double max_edge_len) {
    if (!(max_edge_len > 0.0)) throw std::invalid_argument("concave_hull: max edge length must be > 0");
    const auto unique_nodes = dedup_nodes(nodes);
    std::vector<Point2> pts;
    pts.reserve(unique_nodes.size());
    for (const auto& node : unique_nodes) pts.push_back(node.position);
    const Triangulation tri = delaunay(pts);
    const int n = static_cast<int>(tri.vertices.size());

    const auto ekey = [](int a, int b) {
        return static_cast<std::int64_t>(std::min(a, b)) * 1000003LL + std::max(a, b);
    };
    // edge -> incident alive triangles
    std::unordered_map<std::int64_t, std::vector<int>> edge_tris;
    for (int ti = 0; ti < static_cast<int>(tri.triangles.size()); ++ti) {
        const auto& t = tri.triangles[ti];
        for (int e = 0; e < 3; ++e) edge_tris[ekey(t[e], t[(e + 1) % 3])].push_back(ti);
    }
    std::vector<bool> alive(tri.triangles.size(), true);
    int alive_count = static_cast<int>(tri.triangles.size());

    struct PqEdge {
        double len;
        int a, b;
        bool operator<(const PqEdge& o) const {
            if (len != o.len) return len < o.len;               // max-heap on length
            if (a != o.a) return a > o.a;                       // then smallest pair first
            return b > o.b;
        }
    };
    std::priority_queue<PqEdge> pq;
    std::unordered_map<std::int64_t, bool> on_boundary_edge;
    std::unordered_map<std::int64_t, bool> blocked;
    std::vector<bool> on_boundary_vertex(n, false);

    const auto push_edge = [&](int a, int b) {
        on_boundary_edge[ekey(a, b)] = true;
        on_boundary_vertex[a] = true;
        on_boundary_vertex[b] = true;
        pq.push({dist(tri.vertices[a], tri.vertices[b]), std::min(a, b), std::max(a, b)});
    };
    for (const auto& [a, b] : tri.exterior_edges) push_edge(a, b);

    while (!pq.empty()) {
        const PqEdge top = pq.top();
        if (top.len <= max_edge_len) break;
        pq.pop();
        const auto key = ekey(top.a, top.b);
        if (!on_boundary_edge[key] || blocked[key]) continue;

        int ti = -1;
        for (int cand : edge_tris[key]) {
            if (alive[cand]) {
                ti = cand;
                break;
            }
        }
        if (ti < 0) continue;
        int w = -1;
        for (int v : tri.triangles[ti]) {
            if (v != top.a && v != top.b) w = v;
        }
        // Removal would pinch the polygon if the exposed vertex is already
        // on the boundary, and the last triangle must survive.
        if (alive_count <= 1 || on_boundary_vertex[w]) {
            blocked[key] = true;
            continue;
        }
        alive[ti] = false;
        --alive_count;
        on_boundary_edge[key] = false;
        push_edge(top.a, w);
        push_edge(w, top.b);
    }

    // Walk the boundary cycle.
    std::vector<std::vector<int>> adj(n);
    for (const auto& [key, is_b] : on_boundary_edge) {
        if (!is_b) continue;
        const int a = static_cast<int>(key / 1000003LL);
        const int b = static_cast<int>(key % 1000003LL);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    int start = -1;
    for (int i = 0; i < n; ++i) {
        if (!adj[i].empty()) {
            start = i;
            break;
        }
    }
    if (start < 0) throw std::runtime_error("concave_hull: empty boundary");
    std::vector<int> cycle;
    int prev = -1, cur = start;
    do {
        cycle.push_back(cur);
        const auto& nb = adj[cur];
        if (nb.size() != 2) throw std::runtime_error("concave_hull: boundary vertex degree != 2");
        int nxt = (nb[0] != prev) ? nb[0] : nb[1];
        prev = cur;
        cur = nxt;
    } while (cur != start && static_cast<int>(cycle.size()) <= n);
    if (cur != start) throw std::runtime_error("concave_hull: boundary is not a single cycle");

    double area2 = 0.0;
    for (size_t i = 0; i < cycle.size(); ++i) {
        const Point2& p = tri.vertices[cycle[i]];
        const Point2& q = tri.vertices[cycle[(i + 1) % cycle.size()]];
        area2 += cross(p, q);
    }
    if (area2 < 0.0) std::reverse(cycle.begin(), cycle.end());

    ConcaveHull hull;
    hull.boundary.reserve(cycle.size());
    for (int idx : cycle) hull.boundary.push_back(unique_nodes[idx]);
    const int m = static_cast<int>(cycle.size());
    hull.edge_passable.resize(m);
    hull.edge_removal_blocked.resize(m);
    for (int i = 0; i < m; ++i) {
        const int a = cycle[i], b = cycle[(i + 1) % m];
        hull.edge_passable[i] =
            is_passable_label(hull.boundary[i].label) && is_passable_label(hull.boundary[(i + 1) % m].label);
        hull.edge_removal_blocked[i] = blocked[ekey(a, b)];
    }
    return hull;
}

ConcaveHull filter_hull(const ConcaveHull& hull, double robot_size) {
    const int n = hull.size();
    const double min_span = 2.0 * robot_size;
    std::vector<bool> passable(n);
    int first_impassable = -1;
    for (int i = 0; i < n; ++i) {
        passable[i] = is_passable_label(hull.boundary[i].label);
        if (!passable[i] && first_impassable < 0) first_impassable = i;
    }

    ConcaveHull out = hull;
    out.filter_warning = false;
    if (first_impassable < 0) {
        // Entirely passable ring: judge it against the perimeter.
        if (hull.perimeter() < min_span) out.filter_warning = true;
        return out;
    }

    std::vector<bool> drop(n, false);
    int i = first_impassable;
    int visited = 0;
    while (visited < n) {
        // i is impassable; scan the passable run that follows it.
        int j = (i + 1) % n;
        int run_len = 0;
        double span = 0.0;
        int k = i;
        while (passable[j]) {
            span += dist(hull.boundary[k].position, hull.boundary[j].position);
            k = j;
            j = (j + 1) % n;
            ++run_len;
        }
        span += dist(hull.boundary[k].position, hull.boundary[j].position);
        if (run_len > 0 && span < min_span) {
            for (int s = (i + 1) % n; s != j; s = (s + 1) % n) drop[s] = true;
        }
        visited += run_len + 1;
        i = j;
    }

    int kept = 0;
    for (int v = 0; v < n; ++v) kept += drop[v] ? 0 : 1;
    if (kept < 3) {
        out.filter_warning = true;
        return out;
    }

    ConcaveHull filtered;
    std::vector<int> kept_idx;
    for (int v = 0; v < n; ++v) {
        if (!drop[v]) {
            filtered.boundary.push_back(hull.boundary[v]);
            kept_idx.push_back(v);
        }
    }
    const int m = static_cast<int>(filtered.boundary.size());
    filtered.edge_passable.resize(m);
    filtered.edge_removal_blocked.resize(m);
    for (int e = 0; e < m; ++e) {
        const int a = kept_idx[e], b = kept_idx[(e + 1) % m];
        filtered.edge_passable[e] = is_passable_label(filtered.boundary[e].label) &&
                                    is_passable_label(filtered.boundary[(e + 1) % m].label);
        // Carry the blocked flag only for edges that survived unchanged.
        filtered.edge_removal_blocked[e] = ((a + 1) % n == b) ? hull.edge_removal_blocked[a] : false;
    }
    return filtered;
}

}  // namespace hullgain::geom
