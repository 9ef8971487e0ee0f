#include "hullgain/rrg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace hullgain::rrg {

Rrg Rrg::with_root(const geom::Point2& pose) {
    Rrg rrg;
    rrg.nodes.push_back(RrgNode{0, pose});
    rrg.root = 0;
    return rrg;
}

void Rrg::add_edge(int a, int b) {
    edges.push_back({a, b, geom::dist(nodes[a].position, nodes[b].position)});
}

std::vector<std::vector<std::pair<int, double>>> Rrg::adjacency() const {
    std::vector<std::vector<std::pair<int, double>>> adj(nodes.size());
    for (const auto& e : edges) {
        adj[e.a].push_back({e.b, e.length});
        adj[e.b].push_back({e.a, e.length});
    }
    return adj;
}

Rrg::ShortestPaths Rrg::shortest_paths(int from) const {
    const auto adj = adjacency();
    ShortestPaths sp;
    sp.dist.assign(nodes.size(), std::numeric_limits<double>::infinity());
    sp.pred.assign(nodes.size(), -1);
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    sp.dist[from] = 0.0;
    pq.push({0.0, from});
    while (!pq.empty()) {
        const auto [d, u] = pq.top();
        pq.pop();
        if (d > sp.dist[u]) continue;
        for (const auto& [v, w] : adj[u]) {
            const double nd = d + w;
            if (nd < sp.dist[v]) {
                sp.dist[v] = nd;
                sp.pred[v] = u;
                pq.push({nd, v});
            }
        }
    }
    return sp;
}

int Rrg::nearest(const geom::Point2& p) const {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& node : nodes) {
        const double d = geom::dist(node.position, p);
        if (d < best_d) {
            best_d = d;
            best = node.id;
        }
    }
    return best;
}

bool Rrg::connected() const {
    if (nodes.empty()) return true;
    const auto sp = shortest_paths(root >= 0 ? root : 0);
    for (const auto& d : sp.dist) {
        if (!std::isfinite(d)) return false;
    }
    return true;
}

namespace {

int fail_rank(geom::NodeLabel l) {
    switch (l) {
        case geom::NodeLabel::Occupied: return 0;
        case geom::NodeLabel::Successful: return 1;
        case geom::NodeLabel::Unknown: return 2;
        case geom::NodeLabel::BeyondWindow: return 3;
    }
    return 4;
}

}  // namespace

void FailureSet::add(const geom::Point2& p, geom::NodeLabel label) {
    add_pruned(p, label, label);
}

void FailureSet::add_pruned(const geom::Point2& p, geom::NodeLabel original,
                            geom::NodeLabel effective) {
    if (original == geom::NodeLabel::Successful || effective == geom::NodeLabel::Successful) {
        throw std::invalid_argument("FailureSet: successful label not allowed");
    }
    const auto cx = static_cast<long long>(std::floor(p.x / kDedupRes));
    const auto cy = static_cast<long long>(std::floor(p.y / kDedupRes));
    const long long key = cx * 1000003LL + cy;
    const auto it = index_.find(key);
    if (it != index_.end()) {
        if (fail_rank(effective) < fail_rank(nodes[it->second].label)) {
            nodes[it->second].label = effective;
        }
        if (fail_rank(original) < fail_rank(originals_[it->second])) {
            originals_[it->second] = original;
        }
        return;
    }
    index_[key] = static_cast<int>(nodes.size());
    nodes.push_back({p, effective});
    originals_.push_back(original);
}

ExpandStats expand(Rrg& rrg, FailureSet& fail, const grid::OccupancyGrid& grid,
                   const SlidingWindow& window, const ExpandParams& params,
                   std::mt19937_64& rng) {
    if (rrg.nodes.empty()) throw std::invalid_argument("expand: graph has no root");
    ExpandStats stats;

    // Sample inside the window clipped to the map.
    const geom::Point2 gmin = grid.origin();
    const geom::Point2 gmax{grid.origin().x + grid.width() * grid.resolution(),
                            grid.origin().y + grid.height() * grid.resolution()};
    const double eps = grid.resolution() * 1e-6;
    const double x0 = std::max(window.center.x - window.half_extent, gmin.x + eps);
    const double x1 = std::min(window.center.x + window.half_extent, gmax.x - eps);
    const double y0 = std::max(window.center.y - window.half_extent, gmin.y + eps);
    const double y1 = std::min(window.center.y + window.half_extent, gmax.y - eps);
    if (x0 >= x1 || y0 >= y1) return stats;
    std::uniform_real_distribution<double> sx(x0, x1), sy(y0, y1);

    for (int attempt = 0; attempt < params.n_samples; ++attempt) {
        const geom::Point2 sample{sx(rng), sy(rng)};
        const int nearest = rrg.nearest(sample);
        const geom::Point2& from = rrg.nodes[nearest].position;
        const double d = geom::dist(from, sample);
        if (d <= geom::kEpsGeom) {
            ++stats.skipped;
            continue;
        }
        const double step = std::min(params.step_size, d);
        const geom::Point2 candidate = from + (sample - from) * (step / d);

        // First non-free cell on the steering segment decides the failure
        // label; a fully free segment is tested against the window.
        grid::CellState blocker = grid::CellState::Free;
        grid::raycast_visit(grid, from, candidate, [&](const grid::Cell& c) {
            const grid::CellState s = grid.at(c);
            if (s != grid::CellState::Free) {
                blocker = s;
                return false;
            }
            return true;
        });
        if (blocker == grid::CellState::Occupied) {
            fail.add(candidate, geom::NodeLabel::Occupied);
            ++stats.occupied_failures;
            continue;
        }
        if (blocker == grid::CellState::Unknown) {
            fail.add(candidate, geom::NodeLabel::Unknown);
            ++stats.unknown_failures;
            continue;
        }
        if (!window.contains(candidate)) {
            fail.add(candidate, geom::NodeLabel::BeyondWindow);
            ++stats.beyond_window_failures;
            continue;
        }

        // Densification cap: a would-be node too close to an existing one
        // is dropped, so expansion saturates in covered space. Failures
        // above are always recorded.
        const int nearest_to_candidate = rrg.nearest(candidate);
        if (geom::dist(rrg.nodes[nearest_to_candidate].position, candidate) <
            params.min_node_separation) {
            ++stats.skipped;
            continue;
        }

        const int id = static_cast<int>(rrg.nodes.size());
        RrgNode node;
        node.id = id;
        node.position = candidate;
        node.parent = nearest;
        rrg.nodes.push_back(node);
        rrg.add_edge(nearest, id);
        for (int other = 0; other < id; ++other) {
            if (other == nearest) continue;
            if (geom::dist(rrg.nodes[other].position, candidate) > params.connect_radius) continue;
            if (grid::is_line_free(grid, rrg.nodes[other].position, candidate)) {
                rrg.add_edge(other, id);
            }
        }
        ++stats.added;
    }
    return stats;
}

std::vector<geom::LabeledNode> build_vch(const Rrg& rrg, const FailureSet& fail,
                                         double downsample_res) {
    if (!(downsample_res > 0.0)) throw std::invalid_argument("build_vch: bad resolution");
    const auto rank = [](geom::NodeLabel l) {
        switch (l) {
            case geom::NodeLabel::Occupied: return 0;
            case geom::NodeLabel::Successful: return 1;
            case geom::NodeLabel::Unknown: return 2;
            case geom::NodeLabel::BeyondWindow: return 3;
        }
        return 4;
    };
    std::map<std::pair<long, long>, geom::LabeledNode> cells;
    const auto consider = [&](const geom::LabeledNode& node) {
        const std::pair<long, long> key{static_cast<long>(std::floor(node.position.x / downsample_res)),
                                        static_cast<long>(std::floor(node.position.y / downsample_res))};
        auto it = cells.find(key);
        if (it == cells.end()) {
            cells.emplace(key, node);
        } else if (rank(node.label) < rank(it->second.label)) {
            it->second = node;
        }
    };
    for (const auto& node : rrg.nodes) consider({node.position, geom::NodeLabel::Successful});
    for (const auto& node : fail.nodes) consider(node);

    std::vector<geom::LabeledNode> out;
    out.reserve(cells.size());
    for (const auto& [key, node] : cells) out.push_back(node);
    return out;
}

PruneResult prune_on_window_update(const Rrg& rrg, const FailureSet& fail,
                                   const SlidingWindow& new_window, double margin,
                                   int new_root) {
    const SlidingWindow keep = new_window.inflated(margin);
    PruneResult result;

    for (int i = 0; i < static_cast<int>(fail.nodes.size()); ++i) {
        const geom::Point2& pos = fail.nodes[i].position;
        if (!keep.contains(pos)) continue;  // beyond the pruned range: cut
        if (!new_window.contains(pos)) {
            // Margin band: effectively beyond the window, memory kept.
            result.fail.add_pruned(pos, fail.original(i), geom::NodeLabel::BeyondWindow);
        } else if (fail.original(i) == geom::NodeLabel::Occupied) {
            result.fail.add_pruned(pos, geom::NodeLabel::Occupied, geom::NodeLabel::Occupied);
        }
        // Unknown markers inside the window are rediscovered by fresh
        // expansion; beyond-window markers inside it are superseded by the
        // graph that produced them.
    }

    // Graph nodes in the margin band turn into BeyondWindow markers; nodes
    // beyond it are cut (they live on in the global graph).
    const int n = static_cast<int>(rrg.nodes.size());
    std::vector<bool> kept_node(n, false);
    for (int i = 0; i < n; ++i) {
        const geom::Point2& pos = rrg.nodes[i].position;
        if (new_window.contains(pos)) {
            kept_node[i] = true;
        } else if (keep.contains(pos)) {
            result.fail.add_pruned(pos, geom::NodeLabel::BeyondWindow,
                                   geom::NodeLabel::BeyondWindow);
        }
    }
    if (new_root < 0 || new_root >= n || !kept_node[new_root]) {
        throw std::invalid_argument("prune_on_window_update: new root not inside window");
    }

    // Keep only the component reachable from the new root.
    const auto adj = rrg.adjacency();
    std::vector<bool> reached(n, false);
    std::vector<int> stack{new_root};
    reached[new_root] = true;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (const auto& [v, w] : adj[u]) {
            (void)w;
            if (kept_node[v] && !reached[v]) {
                reached[v] = true;
                stack.push_back(v);
            }
        }
    }

    result.id_map.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (!reached[i]) continue;
        RrgNode node = rrg.nodes[i];
        node.id = static_cast<int>(result.rrg.nodes.size());
        node.parent = -1;  // parents are rebuilt from the new root
        result.id_map[i] = node.id;
        result.rrg.nodes.push_back(node);
    }
    for (const auto& e : rrg.edges) {
        const int a = result.id_map[e.a], b = result.id_map[e.b];
        if (a >= 0 && b >= 0) result.rrg.edges.push_back({a, b, e.length});
    }
    result.rrg.root = result.id_map[new_root];
    return result;
}

Rrg merge_into_global(const Rrg& local, const Rrg& global, double connect_radius) {
    if (local.nodes.empty()) return global;
    Rrg merged = global;

    // Spatial hash over existing nodes for coincidence lookups.
    const double cell = 1.0;
    std::unordered_map<long long, std::vector<int>> buckets;
    const auto key_of = [&](const geom::Point2& p) {
        const auto cx = static_cast<long long>(std::floor(p.x / cell));
        const auto cy = static_cast<long long>(std::floor(p.y / cell));
        return cx * 1000003LL + cy;
    };
    for (const auto& node : merged.nodes) buckets[key_of(node.position)].push_back(node.id);
    const auto find_coincident = [&](const geom::Point2& p) {
        const auto cx = static_cast<long long>(std::floor(p.x / cell));
        const auto cy = static_cast<long long>(std::floor(p.y / cell));
        for (long long dx = -1; dx <= 1; ++dx) {
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = buckets.find((cx + dx) * 1000003LL + (cy + dy));
                if (it == buckets.end()) continue;
                for (int id : it->second) {
                    if (geom::dist(merged.nodes[id].position, p) <= geom::kEpsGeom) return id;
                }
            }
        }
        return -1;
    };

    std::vector<int> id_map(local.nodes.size(), -1);
    bool any_shared = merged.nodes.empty();
    for (const auto& node : local.nodes) {
        const int existing = find_coincident(node.position);
        if (existing >= 0) {
            any_shared = true;
            RrgNode& g = merged.nodes[existing];
            g.visited = g.visited || node.visited;
            g.volumetric_gain = node.volumetric_gain;
            g.exploration_gain = node.exploration_gain;
            id_map[node.id] = existing;
        } else {
            RrgNode copy = node;
            copy.id = static_cast<int>(merged.nodes.size());
            copy.parent = -1;
            id_map[node.id] = copy.id;
            merged.nodes.push_back(copy);
            buckets[key_of(copy.position)].push_back(copy.id);
        }
    }

    std::set<std::pair<int, int>> edge_set;
    for (const auto& e : merged.edges) {
        edge_set.insert({std::min(e.a, e.b), std::max(e.a, e.b)});
    }
    for (const auto& e : local.edges) {
        const int a = id_map[e.a], b = id_map[e.b];
        if (a == b) continue;
        const auto key = std::make_pair(std::min(a, b), std::max(a, b));
        if (edge_set.insert(key).second) merged.edges.push_back({a, b, e.length});
    }

    if (merged.root < 0) merged.root = id_map[local.root];

    if (!any_shared) {
        // Disjoint graphs: tie the local root to the nearest global node.
        const geom::Point2& root_pos = local.nodes[local.root].position;
        int nearest = -1;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& node : global.nodes) {
            const double d = geom::dist(node.position, root_pos);
            if (d < best) {
                best = d;
                nearest = node.id;
            }
        }
        if (nearest < 0 || best > connect_radius) {
            throw std::runtime_error("merge_into_global: no junction within connect radius");
        }
        const auto key = std::make_pair(std::min(nearest, id_map[local.root]),
                                        std::max(nearest, id_map[local.root]));
        if (edge_set.insert(key).second) {
            merged.edges.push_back({nearest, id_map[local.root], best});
        }
    }
    return merged;
}

Rrg local_from_global(const Rrg& global, int entry, const geom::Point2& entry_pose,
                      const SlidingWindow& window) {
    if (entry < 0 || global.nodes.empty()) return Rrg::with_root(entry_pose);

    const int n = static_cast<int>(global.nodes.size());
    const auto adj = global.adjacency();
    std::vector<int> id_map(n, -1);
    std::vector<int> stack{entry};
    Rrg local;
    const auto take = [&](int gid) {
        RrgNode node = global.nodes[gid];
        node.id = static_cast<int>(local.nodes.size());
        node.parent = -1;
        id_map[gid] = node.id;
        local.nodes.push_back(node);
    };
    take(entry);
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (const auto& [v, w] : adj[u]) {
            (void)w;
            if (id_map[v] >= 0) continue;
            if (!window.contains(global.nodes[v].position)) continue;
            take(v);
            stack.push_back(v);
        }
    }
    for (const auto& e : global.edges) {
        const int a = id_map[e.a], b = id_map[e.b];
        if (a >= 0 && b >= 0) local.edges.push_back({a, b, e.length});
    }
    local.root = 0;
    return local;
}

}  // namespace hullgain::rrg
