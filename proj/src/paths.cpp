#include "perc/paths.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>

namespace perc {

bool LatticePath::self_avoiding() const {
    if (lattice == LatticeKind::Primal) {
        std::set<Vertex> seen(vertices.begin(), vertices.end());
        return seen.size() == vertices.size();
    }
    std::set<DualVertex> seen(dual_vertices.begin(), dual_vertices.end());
    return seen.size() == dual_vertices.size();
}

namespace {

struct UnionFind {
    std::vector<int64_t> parent;
    explicit UnionFind(int64_t n) : parent(n) {
        for (int64_t i = 0; i < n; ++i) parent[i] = i;
    }
    int64_t find(int64_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int64_t a, int64_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) parent[b] = a;  // keep minimal index as root
        else parent[a] = b;
    }
};

}  // namespace

std::vector<int64_t> open_clusters(const Configuration& config) {
    const Region& region = config.region();
    UnionFind uf(region.vertex_count());
    for (int64_t e = 0; e < region.edge_count(); ++e) {
        if (!config.open(e)) continue;
        Edge edge = region.edge_at(e);
        uf.unite(region.vertex_index(edge.a), region.vertex_index(edge.b));
    }
    std::vector<int64_t> labels(region.vertex_count());
    for (int64_t v = 0; v < region.vertex_count(); ++v) labels[v] = uf.find(v);
    return labels;
}

namespace {

// --- graph adapters: the same BFS/flow code runs on the primal lattice
// over open edges and on the dual lattice over closed dual edges. Edge
// keys are canonical primal edge indices in both cases.

struct PrimalGraph {
    const Configuration& cfg;
    const Region& rg;

    explicit PrimalGraph(const Configuration& c) : cfg(c), rg(c.region()) {}
    int64_t vertex_count() const { return rg.vertex_count(); }
    // Returns the edge key for the step vid -> *wid in direction dir, or
    // -1 when the step is unusable.
    int64_t step(int64_t vid, int dir, int64_t* wid) const {
        Vertex v = rg.vertex_at(vid);
        Vertex w{v.x + kDirections[dir].x, v.y + kDirections[dir].y};
        if (!rg.contains(w)) return -1;
        Edge e{v, w};
        if (!rg.contains(e)) return -1;
        int64_t idx = rg.edge_index(e);
        if (!cfg.open(idx)) return -1;
        *wid = rg.vertex_index(w);
        return idx;
    }
};

struct DualGraph {
    const Configuration& cfg;
    const Region& rg;
    DualGrid grid;

    explicit DualGraph(const Configuration& c) : cfg(c), rg(c.region()), grid(c.region()) {}
    int64_t vertex_count() const { return grid.size(); }
    int64_t step(int64_t vid, int dir, int64_t* wid) const {
        DualVertex d = grid.at(vid);
        DualVertex d2{d.x + kDirections[dir].x, d.y + kDirections[dir].y};
        if (!grid.contains(d2)) return -1;
        Edge primal = primal_of(d, d2);
        if (!rg.contains(primal)) return -1;
        int64_t idx = rg.edge_index(primal);
        if (cfg.open(idx)) return -1;
        *wid = grid.index(d2);
        return idx;
    }
};

}  // namespace

std::optional<LatticePath> shortest_open_path(const Configuration& config,
                                              const std::vector<Vertex>& sources,
                                              const std::vector<Vertex>& targets,
                                              const std::vector<char>* allowed, int64_t max_len) {
    const Region& region = config.region();
    PrimalGraph g(config);
    std::vector<int32_t> dist(region.vertex_count(), -1);
    std::deque<int64_t> queue;

    std::vector<int64_t> seed_ids;
    seed_ids.reserve(sources.size());
    for (const Vertex& s : sources) {
        if (!region.contains(s)) continue;
        int64_t id = region.vertex_index(s);
        if (allowed && !(*allowed)[id]) continue;
        seed_ids.push_back(id);
    }
    std::sort(seed_ids.begin(), seed_ids.end());
    seed_ids.erase(std::unique(seed_ids.begin(), seed_ids.end()), seed_ids.end());
    for (int64_t id : seed_ids) {
        dist[id] = 0;
        queue.push_back(id);
    }

    while (!queue.empty()) {
        int64_t cur = queue.front();
        queue.pop_front();
        if (max_len >= 0 && dist[cur] >= max_len) continue;
        for (int dir = 0; dir < 4; ++dir) {
            int64_t wid;
            if (g.step(cur, dir, &wid) < 0) continue;
            if (allowed && !(*allowed)[wid]) continue;
            if (dist[wid] >= 0) continue;
            dist[wid] = dist[cur] + 1;
            queue.push_back(wid);
        }
    }

    // Best target: minimal distance, ties by lexicographic vertex order.
    bool found = false;
    Vertex best{0, 0};
    int32_t best_dist = 0;
    for (const Vertex& t : targets) {
        if (!region.contains(t)) continue;
        int32_t d = dist[region.vertex_index(t)];
        if (d < 0) continue;
        if (!found || d < best_dist || (d == best_dist && t < best)) {
            found = true;
            best = t;
            best_dist = d;
        }
    }
    if (!found) return std::nullopt;

    LatticePath path;
    path.lattice = LatticeKind::Primal;
    path.vertices.push_back(best);
    int64_t cur = region.vertex_index(best);
    int32_t d = best_dist;
    while (d > 0) {
        bool stepped = false;
        int64_t pick = -1, pick_edge = -1;
        for (int dir = 0; dir < 4; ++dir) {
            int64_t wid;
            int64_t idx = g.step(cur, dir, &wid);
            if (idx < 0) continue;
            if (allowed && !(*allowed)[wid]) continue;
            if (dist[wid] != d - 1) continue;
            if (!stepped || region.vertex_at(wid) < region.vertex_at(pick)) {
                stepped = true;
                pick = wid;
                pick_edge = idx;
            }
        }
        if (!stepped) throw std::logic_error("shortest_open_path: broken BFS tree");
        path.vertices.push_back(region.vertex_at(pick));
        path.edges.push_back(pick_edge);
        cur = pick;
        --d;
    }
    std::reverse(path.vertices.begin(), path.vertices.end());
    std::reverse(path.edges.begin(), path.edges.end());
    return path;
}

namespace {

// Unit-capacity augmenting-path flow, generic over the graph adapter.
// Vertex-disjoint mode splits every vertex (in-node 2v, out-node 2v+1);
// edge-disjoint mode uses the plain graph. Optional capacity-1 target
// groups sit behind the targets as extra nodes.
template <typename G>
struct FlowCore {
    const G& g;
    const MengerOptions& opt;
    int64_t edge_key_count;
    std::vector<char> source_mark;
    std::vector<char> target_mark;
    std::vector<int64_t> source_ids;  // sorted
    std::vector<int8_t> edge_flow;    // signed: +1 means flow a->b in the
                                      // adapter's fixed lower-id direction
    std::vector<char> split_used;
    std::vector<int64_t> group_feed;  // feeding vertex id per group, or -1

    FlowCore(const G& graph, const MengerOptions& o, int64_t ekeys,
             const std::vector<int64_t>& sources, const std::vector<int64_t>& targets)
        : g(graph), opt(o), edge_key_count(ekeys) {
        const int64_t n = g.vertex_count();
        source_mark.assign(n, 0);
        target_mark.assign(n, 0);
        edge_flow.assign(edge_key_count, 0);
        if (opt.mode == DisjointMode::VertexDisjoint) split_used.assign(n, 0);
        for (int64_t s : sources) {
            if (opt.allowed && !(*opt.allowed)[s]) continue;
            if (!source_mark[s]) {
                source_mark[s] = 1;
                source_ids.push_back(s);
            }
        }
        std::sort(source_ids.begin(), source_ids.end());
        for (int64_t t : targets) {
            if (opt.allowed && !(*opt.allowed)[t]) continue;
            target_mark[t] = 1;
        }
        if (opt.target_group) {
            group_feed.assign(opt.group_count, -1);
            for (int64_t v = 0; v < n; ++v)
                if ((*opt.target_group)[v] >= 0 && (!opt.allowed || (*opt.allowed)[v]))
                    target_mark[v] = 1;
        }
    }

    int group_of(int64_t v) const {
        return opt.target_group ? (*opt.target_group)[v] : -1;
    }

    bool usable(int64_t ekey, int64_t wid) const {
        if (ekey < 0 || ekey == opt.excluded_edge) return false;
        if (opt.allowed && !(*opt.allowed)[wid]) return false;
        if (opt.contracted_sources && source_mark[wid]) return false;
        return true;
    }

    // Flow sign of a traversal from `vid` over edge key `ekey`: +1 when
    // vid is the smaller endpoint id. Works because every edge joins
    // exactly two vertex ids.
    int8_t dir_sign(int64_t vid, int64_t wid) const { return vid < wid ? 1 : -1; }

    // Node layout (vertex mode): 2v in, 2v+1 out, then 2n+g group nodes.
    // Edge mode: v, then n+g group nodes.
    bool augment() {
        const int64_t n = g.vertex_count();
        const bool vmode = opt.mode == DisjointMode::VertexDisjoint;
        const int64_t base = vmode ? 2 * n : n;
        const int64_t total = base + (opt.target_group ? opt.group_count : 0);
        std::vector<int64_t> parent(total, -1), via(total, -1);
        std::deque<int64_t> queue;
        for (int64_t s : source_ids) {
            int64_t start = vmode ? (opt.contracted_sources ? 2 * s + 1 : 2 * s) : s;
            if (parent[start] < 0) {
                parent[start] = start;
                queue.push_back(start);
            }
        }
        int64_t done = -1;
        std::vector<std::pair<int64_t, int64_t>> arcs;  // (node, via) scratch
        while (!queue.empty() && done < 0) {
            int64_t node = queue.front();
            queue.pop_front();
            arcs.clear();
            if (opt.target_group && node >= base) {  // group node
                int gidx = static_cast<int>(node - base);
                if (group_feed[gidx] < 0) {
                    done = node;
                    break;
                }
                int64_t back = vmode ? 2 * group_feed[gidx] + 1 : group_feed[gidx];
                arcs.push_back({back, -5});
            } else if (vmode && node % 2 == 0) {  // in-node
                int64_t v = node / 2;
                if (!split_used[v]) arcs.push_back({2 * v + 1, -2});
                // cancel arcs of edges currently flowing into v
                for (int dir = 0; dir < 4; ++dir) {
                    int64_t wid;
                    int64_t ekey = g.step(v, dir, &wid);
                    if (ekey < 0 || ekey == opt.excluded_edge) continue;
                    if (edge_flow[ekey] != dir_sign(wid, v)) continue;
                    arcs.push_back({2 * wid + 1, ekey});
                }
            } else {  // out-node (vertex mode) or plain vertex (edge mode)
                int64_t v = vmode ? node / 2 : node;
                bool is_start = parent[node] == node;
                if (target_mark[v] && !(is_start && (opt.contracted_sources || !vmode))) {
                    int gidx = group_of(v);
                    if (gidx < 0) {
                        done = node;
                        break;
                    }
                    if (group_feed[gidx] != v) arcs.push_back({base + gidx, -4});
                }
                if (vmode && split_used[v]) arcs.push_back({2 * v, -3});
                for (int dir = 0; dir < 4; ++dir) {
                    int64_t wid;
                    int64_t ekey = g.step(v, dir, &wid);
                    if (!usable(ekey, wid)) continue;
                    if (edge_flow[ekey] * dir_sign(v, wid) >= 1) continue;
                    arcs.push_back({vmode ? 2 * wid : wid, ekey});
                }
                if (!vmode) {
                    // cancel arcs coincide with reverse traversal; handled
                    // by the flow-sign test above.
                }
            }
            for (auto [nxt, arc] : arcs) {
                if (parent[nxt] >= 0) continue;
                parent[nxt] = node;
                via[nxt] = arc;
                queue.push_back(nxt);
            }
        }
        if (done < 0) return false;
        // Apply the augmentation along the parent chain.
        if (opt.target_group && done >= base) {
            int gidx = static_cast<int>(done - base);
            int64_t prev = parent[done];
            group_feed[gidx] = vmode ? prev / 2 : prev;
            done = prev;
        } else if (vmode) {
            split_used[done / 2] = 1;  // the path consumes the target vertex
        }
        int64_t node = done;
        while (parent[node] != node) {
            int64_t prev = parent[node];
            int64_t arc = via[node];
            if (arc == -2) {
                split_used[node / 2] = 1;
            } else if (arc == -3) {
                split_used[node / 2] = 0;
            } else if (arc == -4) {
                int gidx = static_cast<int>(node - (vmode ? 2 * g.vertex_count()
                                                          : g.vertex_count()));
                group_feed[gidx] = vmode ? prev / 2 : prev;
            } else if (arc == -5) {
                // leaving a group node backwards: the group loses its feed
                int gidx = static_cast<int>(prev - (vmode ? 2 * g.vertex_count()
                                                          : g.vertex_count()));
                group_feed[gidx] = -1;
            } else {
                int64_t from = vmode ? prev / 2 : prev;
                int64_t to = vmode ? node / 2 : node;
                edge_flow[arc] += dir_sign(from, to);
            }
            node = prev;
        }
        return true;
    }

    // Decompose the flow into walks from sources to targets.
    template <typename MakePath>
    std::vector<LatticePath> witnesses(const MakePath& finish) {
        std::vector<char> consumed(edge_key_count, 0);
        std::vector<LatticePath> out;

        auto outgoing = [&](int64_t v) -> std::pair<int64_t, int64_t> {
            for (int dir = 0; dir < 4; ++dir) {
                int64_t wid;
                int64_t ekey = g.step(v, dir, &wid);
                if (ekey < 0 || consumed[ekey] || edge_flow[ekey] == 0) continue;
                if (edge_flow[ekey] != dir_sign(v, wid)) continue;
                return {ekey, wid};
            }
            return {-1, -1};
        };
        auto excess = [&](int64_t v) -> int {
            int net = 0;
            for (int dir = 0; dir < 4; ++dir) {
                int64_t wid;
                int64_t ekey = g.step(v, dir, &wid);
                if (ekey < 0 || consumed[ekey] || edge_flow[ekey] == 0) continue;
                net += (edge_flow[ekey] == dir_sign(v, wid)) ? 1 : -1;
            }
            return net;
        };
        // A path terminates at a target with no remaining outgoing flow.
        for (int64_t s : source_ids) {
            for (;;) {
                if (excess(s) <= 0) break;
                std::vector<int64_t> vids{s};
                std::vector<int64_t> ekeys;
                int64_t cur = s;
                for (;;) {
                    auto [ekey, wid] = outgoing(cur);
                    if (ekey < 0) {
                        if (!target_mark[cur])
                            throw std::logic_error("flow decomposition stalled");
                        break;
                    }
                    if (target_mark[cur] && cur != s) {
                        // Prefer to terminate here only if required; flow
                        // through targets continues when outgoing exists
                        // and the vertex did not absorb a unit. A vertex
                        // absorbed a unit iff its unconsumed excess is
                        // negative.
                        if (excess(cur) < 0) break;
                    }
                    consumed[ekey] = 1;
                    ekeys.push_back(ekey);
                    vids.push_back(wid);
                    cur = wid;
                }
                // Loop-erase (keeps witnesses simple in edge mode).
                for (size_t i = 0; i < vids.size(); ++i) {
                    for (size_t j = vids.size(); j-- > i + 1;) {
                        if (vids[j] == vids[i]) {
                            vids.erase(vids.begin() + i + 1, vids.begin() + j + 1);
                            ekeys.erase(ekeys.begin() + i, ekeys.begin() + j);
                            break;
                        }
                    }
                }
                out.push_back(finish(vids, ekeys));
            }
        }
        return out;
    }
};

template <typename G, typename MakePath>
DisjointPaths run_flow(const G& g, const MengerOptions& opt, int64_t ekeys,
                       const std::vector<int64_t>& sources, const std::vector<int64_t>& targets,
                       const MakePath& finish) {
    FlowCore<G> core(g, opt, ekeys, sources, targets);
    DisjointPaths result;
    while (result.count < opt.max_paths && core.augment()) ++result.count;
    if (opt.want_witnesses && result.count > 0) result.witnesses = core.witnesses(finish);
    return result;
}

}  // namespace

DisjointPaths max_disjoint_open_paths(const Configuration& config,
                                      const std::vector<Vertex>& sources,
                                      const std::vector<Vertex>& targets,
                                      const MengerOptions& opt) {
    const Region& region = config.region();
    PrimalGraph g(config);
    std::vector<int64_t> src, tgt;
    for (const Vertex& v : sources)
        if (region.contains(v)) src.push_back(region.vertex_index(v));
    for (const Vertex& v : targets)
        if (region.contains(v)) tgt.push_back(region.vertex_index(v));
    auto finish = [&](const std::vector<int64_t>& vids, const std::vector<int64_t>& ekeys) {
        LatticePath p;
        p.lattice = LatticeKind::Primal;
        for (int64_t id : vids) p.vertices.push_back(region.vertex_at(id));
        p.edges = ekeys;
        return p;
    };
    return run_flow(g, opt, region.edge_count(), src, tgt, finish);
}

DisjointPaths max_disjoint_closed_dual_paths(const Configuration& config,
                                             const std::vector<DualVertex>& sources,
                                             const std::vector<char>& target_mask,
                                             const MengerOptions& opt) {
    const Region& region = config.region();
    DualGraph g(config);
    std::vector<int64_t> src, tgt;
    for (const DualVertex& d : sources)
        if (g.grid.contains(d)) src.push_back(g.grid.index(d));
    for (int64_t i = 0; i < g.grid.size(); ++i)
        if (target_mask[i]) tgt.push_back(i);
    auto finish = [&](const std::vector<int64_t>& vids, const std::vector<int64_t>& ekeys) {
        LatticePath p;
        p.lattice = LatticeKind::Dual;
        for (int64_t id : vids) p.dual_vertices.push_back(g.grid.at(id));
        p.edges = ekeys;
        return p;
    };
    return run_flow(g, opt, region.edge_count(), src, tgt, finish);
}

// --- dual lattice -----------------------------------------------------

DualTarget dual_target_side(const Region& region, Side side) {
    int n = region.outer();
    switch (side) {
        case Side::Bottom:
            return [n](DualVertex d) { return d.y == -n - 1 && d.x >= -n - 1 && d.x <= n; };
        case Side::Top:
            return [n](DualVertex d) { return d.y == n && d.x >= -n - 1 && d.x <= n; };
        case Side::Left:
            return [n](DualVertex d) { return d.x == -n - 1 && d.y >= -n - 1 && d.y <= n; };
        case Side::Right:
            return [n](DualVertex d) { return d.x == n && d.y >= -n - 1 && d.y <= n; };
    }
    return [](DualVertex) { return false; };
}

DualTarget dual_target_radius(int k) {
    return [k](DualVertex d) {
        int rx = std::max(d.x, -1 - d.x);  // |x + 1/2| - 1/2 in integer form
        int ry = std::max(d.y, -1 - d.y);
        return std::max(rx, ry) == k;
    };
}

std::optional<LatticePath> closed_dual_path(const Configuration& config, const DualEdge& source,
                                            const DualTarget& target,
                                            const std::vector<char>* allowed) {
    DualGraph g(config);
    const DualGrid& grid = g.grid;
    std::vector<int32_t> dist(grid.size(), -1);
    std::deque<int64_t> queue;

    std::vector<DualVertex> seeds{source.a, source.b};
    std::sort(seeds.begin(), seeds.end());
    for (const DualVertex& s : seeds) {
        if (!grid.contains(s)) continue;
        int64_t id = grid.index(s);
        if (allowed && !(*allowed)[id]) continue;
        if (dist[id] < 0) {
            dist[id] = 0;
            queue.push_back(id);
        }
    }

    while (!queue.empty()) {
        int64_t cur = queue.front();
        queue.pop_front();
        for (int dir = 0; dir < 4; ++dir) {
            int64_t wid;
            if (g.step(cur, dir, &wid) < 0) continue;
            if (allowed && !(*allowed)[wid]) continue;
            if (dist[wid] >= 0) continue;
            dist[wid] = dist[cur] + 1;
            queue.push_back(wid);
        }
    }

    bool found = false;
    DualVertex best{0, 0};
    int32_t best_dist = 0;
    for (int64_t i = 0; i < grid.size(); ++i) {
        if (dist[i] < 0) continue;
        DualVertex d = grid.at(i);
        if (!target(d)) continue;
        if (!found || dist[i] < best_dist || (dist[i] == best_dist && d < best)) {
            found = true;
            best = d;
            best_dist = dist[i];
        }
    }
    if (!found) return std::nullopt;

    LatticePath path;
    path.lattice = LatticeKind::Dual;
    path.dual_vertices.push_back(best);
    int64_t cur = grid.index(best);
    int32_t d = best_dist;
    while (d > 0) {
        bool stepped = false;
        int64_t pick = -1, pick_edge = -1;
        for (int dir = 0; dir < 4; ++dir) {
            int64_t wid;
            int64_t idx = g.step(cur, dir, &wid);
            if (idx < 0) continue;
            if (allowed && !(*allowed)[wid]) continue;
            if (dist[wid] != d - 1) continue;
            if (!stepped || grid.at(wid) < grid.at(pick)) {
                stepped = true;
                pick = wid;
                pick_edge = idx;
            }
        }
        if (!stepped) throw std::logic_error("closed_dual_path: broken BFS tree");
        path.dual_vertices.push_back(grid.at(pick));
        path.edges.push_back(pick_edge);
        cur = pick;
        --d;
    }
    std::reverse(path.dual_vertices.begin(), path.dual_vertices.end());
    std::reverse(path.edges.begin(), path.edges.end());
    return path;
}

std::vector<char> dual_closed_cluster(const Configuration& config,
                                      const std::vector<DualVertex>& seeds,
                                      const std::vector<char>* allowed) {
    DualGraph g(config);
    const DualGrid& grid = g.grid;
    std::vector<char> mask(grid.size(), 0);
    std::deque<int64_t> queue;
    for (const DualVertex& s : seeds) {
        if (!grid.contains(s)) continue;
        int64_t id = grid.index(s);
        if (allowed && !(*allowed)[id]) continue;
        if (!mask[id]) {
            mask[id] = 1;
            queue.push_back(id);
        }
    }
    while (!queue.empty()) {
        int64_t cur = queue.front();
        queue.pop_front();
        for (int dir = 0; dir < 4; ++dir) {
            int64_t wid;
            if (g.step(cur, dir, &wid) < 0) continue;
            if (allowed && !(*allowed)[wid]) continue;
            if (!mask[wid]) {
                mask[wid] = 1;
                queue.push_back(wid);
            }
        }
    }
    return mask;
}

}  // namespace perc
