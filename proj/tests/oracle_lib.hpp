#pragma once

// Brute-force enumeration oracles for the test suite. Everything here is
// deliberately naive — exhaustive DFS over self-avoiding open paths and
// circuits — and is only ever run on tiny regions or sparse
// configurations. The library must agree with these oracles exactly.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "perc/config.hpp"
#include "perc/geometry.hpp"
#include "perc/paths.hpp"
#include "perc/winding.hpp"

namespace brute {

using perc::Configuration;
using perc::DualVertex;
using perc::Edge;
using perc::kDirections;
using perc::Region;
using perc::Vertex;

using VertexPath = std::vector<Vertex>;
using FaceSet = std::set<std::pair<int, int>>;  // faces keyed by dual coords

namespace detail {

struct PathDfs {
    const Region* rg = nullptr;
    const Configuration* cf = nullptr;
    std::vector<char> target;  // by vertex index
    std::vector<char> used;
    VertexPath stack;
    std::vector<VertexPath>* out = nullptr;
    size_t cap = 0;
    bool overflow = false;

    void run(Vertex v) {
        if (overflow) return;
        if (target[rg->vertex_index(v)]) {
            out->push_back(stack);
            if (out->size() > cap) overflow = true;
            // a longer self-avoiding extension may reach another target,
            // so keep exploring past a target vertex
        }
        for (auto d : kDirections) {
            Vertex w = v + d;
            if (!rg->contains(w)) continue;
            if (!cf->open(rg->edge_index(Edge{v, w}))) continue;
            int64_t wi = rg->vertex_index(w);
            if (used[wi]) continue;
            used[wi] = 1;
            stack.push_back(w);
            run(w);
            stack.pop_back();
            used[wi] = 0;
            if (overflow) return;
        }
    }
};

}  // namespace detail

// All open self-avoiding paths from a source to a target vertex (first
// vertex in sources, last in targets; zero-length paths allowed when the
// sets meet). Returns nothing when more than `cap` paths exist.
inline std::optional<std::vector<VertexPath>> all_open_paths(const Configuration& config,
                                                             const std::vector<Vertex>& sources,
                                                             const std::vector<Vertex>& targets,
                                                             size_t cap = 200000) {
    const Region& rg = config.region();
    detail::PathDfs dfs;
    dfs.rg = &rg;
    dfs.cf = &config;
    dfs.target.assign(rg.vertex_count(), 0);
    for (Vertex t : targets) dfs.target[rg.vertex_index(t)] = 1;
    std::vector<VertexPath> out;
    dfs.out = &out;
    dfs.cap = cap;
    dfs.used.assign(rg.vertex_count(), 0);
    for (Vertex s : sources) {
        dfs.used[rg.vertex_index(s)] = 1;
        dfs.stack = {s};
        dfs.run(s);
        dfs.used[rg.vertex_index(s)] = 0;
        if (dfs.overflow) return std::nullopt;
    }
    return out;
}

// All open self-avoiding left-right crossings of a box.
inline std::optional<std::vector<VertexPath>> all_crossings(const Configuration& config,
                                                            size_t cap = 200000) {
    const Region& rg = config.region();
    return all_open_paths(config, rg.side_vertices(perc::Side::Left),
                          rg.side_vertices(perc::Side::Right), cap);
}

inline int64_t path_length(const VertexPath& p) { return (int64_t)p.size() - 1; }

inline std::optional<int64_t> min_length(const std::vector<VertexPath>& paths) {
    std::optional<int64_t> best;
    for (const auto& p : paths)
        if (!best || path_length(p) < *best) best = path_length(p);
    return best;
}

// Faces (unit squares, keyed by the dual vertex at their center) enclosed
// by a closed vertex walk, by exact winding over the whole dual window.
inline FaceSet enclosed_faces(const Region& rg, const VertexPath& closed_walk) {
    FaceSet out;
    int N = rg.outer();
    std::vector<perc::DoubledPoint> curve;
    curve.reserve(closed_walk.size());
    for (Vertex v : closed_walk) curve.push_back(perc::doubled(v));
    for (int x = -N - 2; x <= N + 1; ++x)
        for (int y = -N - 2; y <= N + 1; ++y)
            if (perc::winding_number(curve, perc::doubled(DualVertex{x, y})) != 0)
                out.insert({x, y});
    return out;
}

// Faces lying strictly below a left-right crossing: close the crossing
// through a frame under the box (down the right side, along the bottom,
// up the left side) and collect the enclosed faces. Two crossings compare
// as lower/higher by inclusion of these sets.
inline FaceSet faces_below_crossing(const Region& rg, const VertexPath& path) {
    int n = rg.n();
    VertexPath closed = path;
    Vertex last = path.back();   // (n, y1)
    Vertex first = path.front();  // (-n, y0)
    closed.push_back({n + 1, last.y});
    closed.push_back({n + 1, -n - 1});
    closed.push_back({-n - 1, -n - 1});
    closed.push_back({-n - 1, first.y});
    closed.push_back(first);
    return enclosed_faces(rg, closed);
}

// Edge index set of a vertex path.
inline std::set<int64_t> edge_set(const Region& rg, const VertexPath& p) {
    std::set<int64_t> out;
    for (size_t i = 0; i + 1 < p.size(); ++i) out.insert(rg.edge_index(Edge{p[i], p[i + 1]}));
    return out;
}

struct ExtremalOracle {
    bool exists = false;
    VertexPath path;          // the unique extremal crossing
    std::set<int64_t> edges;  // its edge set
    bool unique = false;      // a unique extremal element was found
};

// The crossing whose below-face set is contained in (Lowest) or contains
// (Topmost) that of every other crossing. Theory guarantees a unique such
// extremal element; `unique` reports whether the enumeration confirmed it.
inline ExtremalOracle extremal_oracle(const Configuration& config,
                                      const std::vector<VertexPath>& crossings, bool lowest) {
    ExtremalOracle r;
    if (crossings.empty()) return r;
    const Region& rg = config.region();
    std::vector<FaceSet> below;
    below.reserve(crossings.size());
    for (const auto& p : crossings) below.push_back(faces_below_crossing(rg, p));
    for (size_t i = 0; i < crossings.size(); ++i) {
        bool extremal = true;
        for (size_t j = 0; j < crossings.size() && extremal; ++j) {
            if (i == j) continue;
            const FaceSet& small = lowest ? below[i] : below[j];
            const FaceSet& big = lowest ? below[j] : below[i];
            extremal = std::includes(big.begin(), big.end(), small.begin(), small.end());
        }
        if (!extremal) continue;
        auto es = edge_set(rg, crossings[i]);
        if (r.exists && es != r.edges) return ExtremalOracle{true, {}, {}, false};
        r.exists = true;
        r.unique = true;
        r.path = crossings[i];
        r.edges = std::move(es);
    }
    return r;
}

// Maximum pairwise vertex-disjoint subfamily of the given paths, by exact
// branch-and-bound. Paths sharing any vertex conflict.
inline int max_disjoint_family(const Region& rg, const std::vector<VertexPath>& paths) {
    size_t m = paths.size();
    std::vector<std::vector<int64_t>> vsets(m);
    for (size_t i = 0; i < m; ++i) {
        for (Vertex v : paths[i]) vsets[i].push_back(rg.vertex_index(v));
        std::sort(vsets[i].begin(), vsets[i].end());
    }
    int best = 0;
    std::vector<char> blocked(rg.vertex_count(), 0);
    auto conflict = [&](size_t i) {
        for (int64_t v : vsets[i])
            if (blocked[v]) return true;
        return false;
    };
    std::function<void(size_t, int)> go = [&](size_t i, int chosen) {
        if (chosen + (int)(m - i) <= best) return;  // bound
        if (i == m) {
            best = std::max(best, chosen);
            return;
        }
        if (!conflict(i)) {
            for (int64_t v : vsets[i]) blocked[v] = 1;
            go(i + 1, chosen + 1);
            for (int64_t v : vsets[i]) blocked[v] = 0;
        }
        go(i + 1, chosen);
    };
    go(0, 0);
    return best;
}

namespace detail {

struct CircuitDfs {
    const Region* rg = nullptr;
    const Configuration* cf = nullptr;
    std::vector<char> used;
    VertexPath stack;
    Vertex start;
    int64_t start_idx = 0;
    std::vector<VertexPath>* out = nullptr;
    size_t cap = 0;
    bool overflow = false;

    void run(Vertex v) {
        if (overflow) return;
        for (auto d : kDirections) {
            Vertex w = v + d;
            if (!rg->contains(w)) continue;
            if (!cf->open(rg->edge_index(Edge{v, w}))) continue;
            if (w == start && stack.size() >= 4) {
                VertexPath c = stack;
                c.push_back(start);
                int wd = perc::winding_number(c, Vertex{0, 0});
                if (wd == 1 || wd == -1) {
                    out->push_back(std::move(c));
                    if (out->size() > cap) {
                        overflow = true;
                        return;
                    }
                }
                continue;
            }
            int64_t wi = rg->vertex_index(w);
            if (used[wi] || wi < start_idx) continue;  // canonical least start
            used[wi] = 1;
            stack.push_back(w);
            run(w);
            stack.pop_back();
            used[wi] = 0;
            if (overflow) return;
        }
    }
};

}  // namespace detail

// All open self-avoiding circuits in the annulus surrounding the origin,
// as closed walks (first == last); each circuit appears twice (once per
// traversal direction). Nothing when more than `cap` walks exist.
inline std::optional<std::vector<VertexPath>> all_surrounding_circuits(const Configuration& config,
                                                                       size_t cap = 400000) {
    const Region& rg = config.region();
    detail::CircuitDfs dfs;
    dfs.rg = &rg;
    dfs.cf = &config;
    std::vector<VertexPath> out;
    dfs.out = &out;
    dfs.cap = cap;
    for (int64_t i = 0; i < rg.vertex_count(); ++i) {
        dfs.start = rg.vertex_at(i);
        dfs.start_idx = i;
        dfs.used.assign(rg.vertex_count(), 0);
        dfs.used[i] = 1;
        dfs.stack = {dfs.start};
        dfs.run(dfs.start);
        if (dfs.overflow) return std::nullopt;
    }
    return out;
}

struct InnermostOracle {
    bool exists = false;
    FaceSet interior;  // interior of the innermost circuit
    int64_t length = 0;
    bool unique = false;
};

// The circuit whose interior face set is contained in every other
// circuit's interior.
inline InnermostOracle innermost_oracle(const Configuration& config,
                                        const std::vector<VertexPath>& circuits) {
    InnermostOracle r;
    if (circuits.empty()) return r;
    const Region& rg = config.region();
    std::vector<FaceSet> interiors;
    interiors.reserve(circuits.size());
    for (const auto& c : circuits) interiors.push_back(enclosed_faces(rg, c));
    for (size_t i = 0; i < circuits.size(); ++i) {
        bool inner = true;
        for (size_t j = 0; j < circuits.size() && inner; ++j)
            inner = std::includes(interiors[j].begin(), interiors[j].end(), interiors[i].begin(),
                                  interiors[i].end());
        if (!inner) continue;
        if (r.exists && interiors[i] != r.interior) return InnermostOracle{true, {}, 0, false};
        r.exists = true;
        r.unique = true;
        r.interior = interiors[i];
        r.length = path_length(circuits[i]);
    }
    return r;
}

// Copy of `c` with the square ring of max-norm radius r forced open.
// Circuits are rare in small annuli at moderate p; planting a ring on a
// fraction of sampled configurations makes the nonvacuous comparisons
// common without inflating the circuit count past the enumeration caps.
inline Configuration with_open_ring(const Configuration& c, int r) {
    std::vector<uint64_t> bits = c.packed_bits();
    auto force = [&](Edge e) {
        int64_t i = c.region().edge_index(e);
        bits[i >> 6] |= 1ull << (i & 63);
    };
    for (int x = -r; x < r; ++x) {
        force(Edge{Vertex{x, r}, Vertex{x + 1, r}});
        force(Edge{Vertex{x, -r}, Vertex{x + 1, -r}});
    }
    for (int y = -r; y < r; ++y) {
        force(Edge{Vertex{r, y}, Vertex{r, y + 1}});
        force(Edge{Vertex{-r, y}, Vertex{-r, y + 1}});
    }
    return Configuration(c.region(), c.p(), c.master_seed(), c.sample_id(), std::move(bits));
}

}  // namespace brute
