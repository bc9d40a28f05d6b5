#include "perc/detours.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "perc/winding.hpp"

namespace perc {

namespace {

// Shared geometry of one circuit: positions, masks, exterior.
struct CircuitContext {
    const Region* rg = nullptr;
    const LatticeCircuit* gamma = nullptr;
    int64_t L = 0;                        // edge count of gamma
    std::map<Vertex, int64_t> pos;        // circuit vertex -> index in walk
    std::vector<char> on_gamma_edge;      // by canonical edge index
    std::vector<char> exterior;           // by vertex index: ext(gamma), off gamma
    std::vector<DoubledPoint> gamma_dbl;  // doubled walk, for winding queries

    CircuitContext(const Configuration& config, const LatticeCircuit& g)
        : rg(&config.region()), gamma(&g), L(g.length()) {
        const auto& verts = g.walk.vertices;
        for (int64_t i = 0; i < L; ++i) pos[verts[i]] = i;
        on_gamma_edge.assign(rg->edge_count(), 0);
        for (int64_t e : g.walk.edges) on_gamma_edge[e] = 1;
        gamma_dbl.reserve(L);
        for (int64_t i = 0; i < L; ++i) gamma_dbl.push_back(doubled(verts[i]));
        exterior.assign(rg->vertex_count(), 0);
        for (int64_t i = 0; i < rg->vertex_count(); ++i) {
            Vertex v = rg->vertex_at(i);
            if (pos.count(v)) continue;
            exterior[i] = winding_number(gamma_dbl, doubled(v)) == 0;
        }
    }

    // Vertices of the arc of gamma from position i0 forward to position iM.
    std::vector<Vertex> arc_vertices(int64_t i0, int64_t iM) const {
        std::vector<Vertex> out;
        for (int64_t i = i0;; i = (i + 1) % L) {
            out.push_back(gamma->walk.vertices[i]);
            if (i == iM) break;
        }
        return out;
    }

    LatticePath arc_path(int64_t i0, int64_t iM) const {
        LatticePath q;
        q.lattice = LatticeKind::Primal;
        q.vertices = arc_vertices(i0, iM);
        for (int64_t i = i0; i != iM; i = (i + 1) % L) q.edges.push_back(gamma->walk.edges[i]);
        return q;
    }
};

struct VertexBfs {
    std::vector<int64_t> dist;
    std::vector<int64_t> parent;
};

// Depth-capped BFS over open edges restricted to `allowed` vertices,
// deterministic via the fixed E,N,W,S neighbor order.
VertexBfs open_bfs(const Configuration& config, Vertex start, const std::vector<char>& allowed,
                   int64_t cap) {
    const Region& rg = config.region();
    VertexBfs bfs;
    bfs.dist.assign(rg.vertex_count(), -1);
    bfs.parent.assign(rg.vertex_count(), -1);
    int64_t s = rg.vertex_index(start);
    if (!allowed[s]) return bfs;
    std::queue<int64_t> queue;
    bfs.dist[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
        int64_t i = queue.front();
        queue.pop();
        if (bfs.dist[i] >= cap) continue;
        Vertex v = rg.vertex_at(i);
        for (const Vertex& dir : kDirections) {
            Vertex w{v.x + dir.x, v.y + dir.y};
            if (!rg.contains(w)) continue;
            int64_t j = rg.vertex_index(w);
            if (!allowed[j] || bfs.dist[j] >= 0) continue;
            Edge e{v, w};
            if (!rg.contains(e) || !config.open(e)) continue;
            bfs.dist[j] = bfs.dist[i] + 1;
            bfs.parent[j] = i;
            queue.push(j);
        }
    }
    return bfs;
}

// Dual vertex at w + (ox/2, oy/2) for ox, oy in {-1, +1}.
DualVertex corner_dual(Vertex w, int ox, int oy) {
    return {w.x + (ox > 0 ? 0 : -1), w.y + (oy > 0 ? 0 : -1)};
}

// Closed dual BFS path from a to b whose first and last edges are
// parallel to u2, or absent. Returns the dual vertex sequence a .. b.
std::optional<std::vector<DualVertex>> shield_path(const Configuration& config, DualVertex a,
                                                   DualVertex b, Vertex u2) {
    if (a == b) return std::nullopt;
    const Region& rg = config.region();
    DualGrid grid(rg);
    if (!grid.contains(a) || !grid.contains(b)) return std::nullopt;
    std::vector<int64_t> dist(grid.size(), -1), parent(grid.size(), -1);
    int64_t s = grid.index(a), t = grid.index(b);
    dist[s] = 0;
    std::queue<int64_t> queue;
    queue.push(s);
    while (!queue.empty()) {
        int64_t i = queue.front();
        queue.pop();
        if (i == t) break;
        DualVertex d = grid.at(i);
        for (const Vertex& dir : kDirections) {
            // first edge out of a, and the edge into b, must be +-u2
            bool vertical = (dir.x == u2.x && dir.y == u2.y) || (dir.x == -u2.x && dir.y == -u2.y);
            if (i == s && !vertical) continue;
            DualVertex nd{d.x + dir.x, d.y + dir.y};
            if (!grid.contains(nd)) continue;
            int64_t j = grid.index(nd);
            if (j == t && !vertical) continue;
            if (dist[j] >= 0) continue;
            Edge partner = primal_of(d, nd);
            if (!rg.contains(partner) || config.open(partner)) continue;
            dist[j] = dist[i] + 1;
            parent[j] = i;
            queue.push(j);
        }
    }
    if (dist[t] < 0) return std::nullopt;
    std::vector<DualVertex> path;
    for (int64_t i = t; i >= 0; i = parent[i]) path.push_back(grid.at(i));
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<Vertex> canonical_sequence(const std::vector<Vertex>& seq) {
    std::vector<Vertex> rev(seq.rbegin(), seq.rend());
    return std::lexicographical_compare(seq.begin(), seq.end(), rev.begin(), rev.end()) ? seq
                                                                                        : rev;
}

bool detour_order(const ShieldedDetour& x, const ShieldedDetour& y) {
    if (x.detour.length() != y.detour.length()) return x.detour.length() < y.detour.length();
    return canonical_sequence(x.detour.vertices) < canonical_sequence(y.detour.vertices);
}

}  // namespace

std::vector<ShieldedDetour> find_all_shielded_detours(const Configuration& config,
                                                      const LatticeCircuit& gamma,
                                                      double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("epsilon not in (0,1)");
    const Region& rg = config.region();
    CircuitContext ctx(config, gamma);
    std::vector<ShieldedDetour> found;

    // Condition 5 caps #P by epsilon * #Q <= epsilon * (L - 1); with the
    // two prescribed vertical end edges, the inner BFS depth is capped at
    // epsilon * (L - 1) - 2. Degenerate epsilon yields no candidates.
    int64_t cap = static_cast<int64_t>(epsilon * static_cast<double>(ctx.L - 1)) - 2;
    if (cap < 0) return found;

    for (int frame = 0; frame < 4; ++frame) {
        Vertex u1 = kDirections[frame];
        Vertex u2 = kDirections[(frame + 1) % 4];

        // Condition 2 candidates: gamma runs through w horizontally (in
        // this frame) and the detour leaves upward through an open edge.
        std::vector<Vertex> candidates;
        for (int64_t i = 0; i < ctx.L; ++i) {
            Vertex w = gamma.walk.vertices[i];
            Vertex left{w.x - u1.x, w.y - u1.y}, right{w.x + u1.x, w.y + u1.y};
            Vertex up{w.x + u2.x, w.y + u2.y};
            if (!rg.contains(left) || !rg.contains(right) || !rg.contains(up)) continue;
            Edge el{left, w}, er{w, right}, eu{w, up};
            if (!ctx.on_gamma_edge[rg.edge_index(el)] || !ctx.on_gamma_edge[rg.edge_index(er)])
                continue;
            if (!rg.contains(eu) || !config.open(eu)) continue;
            if (!ctx.exterior[rg.vertex_index(up)]) continue;
            candidates.push_back(w);
        }

        for (Vertex w0 : candidates) {
            Vertex w1{w0.x + u2.x, w0.y + u2.y};
            VertexBfs bfs = open_bfs(config, w1, ctx.exterior, cap);
            for (Vertex wm : candidates) {
                if (wm == w0) continue;
                Vertex w1m{wm.x + u2.x, wm.y + u2.y};
                int64_t ti = rg.vertex_index(w1m);
                if (bfs.dist[ti] < 0) continue;

                // Assemble P = w0, w1, .., w1m, wm.
                LatticePath P;
                P.lattice = LatticeKind::Primal;
                std::vector<Vertex> inner;
                for (int64_t i = ti; i >= 0; i = bfs.parent[i]) inner.push_back(rg.vertex_at(i));
                std::reverse(inner.begin(), inner.end());
                P.vertices.push_back(w0);
                P.vertices.insert(P.vertices.end(), inner.begin(), inner.end());
                P.vertices.push_back(wm);
                for (size_t i = 0; i + 1 < P.vertices.size(); ++i)
                    P.edges.push_back(rg.edge_index(Edge{P.vertices[i], P.vertices[i + 1]}));

                // Condition 3 selects the arc Q: exactly one of the two
                // arcs between w0 and wm closes with P without
                // surrounding the origin.
                int64_t i0 = ctx.pos.at(w0), iM = ctx.pos.at(wm);
                LatticePath Q;
                bool have_q = false;
                for (int dirn = 0; dirn < 2 && !have_q; ++dirn) {
                    LatticePath arc = dirn == 0 ? ctx.arc_path(i0, iM) : ctx.arc_path(iM, i0);
                    std::vector<Vertex> curve = arc.vertices;
                    if (dirn == 0) {
                        for (size_t i = P.vertices.size() - 1; i >= 1; --i)
                            curve.push_back(P.vertices[i - 1]);
                        curve.pop_back();  // implicit wrap closes at w0
                    } else {
                        for (size_t i = 1; i < P.vertices.size(); ++i)
                            curve.push_back(P.vertices[i]);
                        curve.pop_back();  // wrap closes at wm... arc ends at w0
                    }
                    if (winding_number(curve, Vertex{0, 0}) == 0) {
                        // orient Q from w0 to wm
                        if (dirn == 0) {
                            Q = arc;
                        } else {
                            Q.lattice = LatticeKind::Primal;
                            Q.vertices.assign(arc.vertices.rbegin(), arc.vertices.rend());
                            Q.edges.assign(arc.edges.rbegin(), arc.edges.rend());
                        }
                        have_q = true;
                    }
                }
                if (!have_q) continue;

                // Condition 5.
                if (static_cast<double>(P.length()) > epsilon * static_cast<double>(Q.length()))
                    continue;

                // Condition 4: the shield.
                DualVertex a = corner_dual(w0, -u1.x + u2.x, -u1.y + u2.y);
                DualVertex b = corner_dual(wm, u1.x + u2.x, u1.y + u2.y);
                auto shield = shield_path(config, a, b, u2);
                if (!shield) continue;
                std::vector<DoubledPoint> comp;
                comp.push_back(doubled(w1));
                for (DualVertex d : *shield) comp.push_back(doubled(d));
                for (size_t i = P.vertices.size() - 1; i >= 1; --i)
                    comp.push_back(doubled(P.vertices[i - 1]));
                comp.pop_back();  // wrap closes at w1
                if (winding_number(comp, doubled(Vertex{0, 0})) != 0) continue;

                ShieldedDetour det;
                det.detour = std::move(P);
                det.detoured = std::move(Q);
                det.shield.lattice = LatticeKind::Dual;
                det.shield.dual_vertices = *shield;
                for (size_t i = 0; i + 1 < shield->size(); ++i)
                    det.shield.edges.push_back(
                        rg.edge_index(primal_of((*shield)[i], (*shield)[i + 1])));
                det.seed_edge = rg.edge_at(det.detoured.edges.front());
                det.epsilon = epsilon;
                det.frame = frame;
                found.push_back(std::move(det));
            }
        }
    }

    std::sort(found.begin(), found.end(), detour_order);
    found.erase(std::unique(found.begin(), found.end(),
                            [](const ShieldedDetour& x, const ShieldedDetour& y) {
                                return canonical_sequence(x.detour.vertices) ==
                                       canonical_sequence(y.detour.vertices);
                            }),
                found.end());
    return found;
}

std::optional<ShieldedDetour> find_shielded_detour(const Configuration& config,
                                                   const LatticeCircuit& gamma, const Edge& e,
                                                   double epsilon) {
    const Region& rg = config.region();
    int64_t idx = rg.edge_index(e);
    bool on_gamma = false;
    for (int64_t g : gamma.walk.edges) on_gamma |= (g == idx);
    if (!on_gamma) throw std::domain_error("edge not on the circuit");

    for (ShieldedDetour& d : find_all_shielded_detours(config, gamma, epsilon)) {
        for (int64_t q : d.detoured.edges) {
            if (q == idx) {
                d.seed_edge = e;
                return d;
            }
        }
    }
    return std::nullopt;
}

DetourFamily select_maximal_family(const std::vector<ShieldedDetour>& ordered) {
    DetourFamily family;
    std::set<Vertex> used;
    for (const ShieldedDetour& d : ordered) {
        bool clash = false;
        for (Vertex v : d.detoured.vertices) clash |= used.count(v) > 0;
        if (clash) continue;
        for (Vertex v : d.detoured.vertices) used.insert(v);
        family.total_detour_length += d.detour.length();
        family.total_detoured_length += d.detoured.length();
        family.members.push_back(d);
    }
    return family;
}

LatticeCircuit build_shortcut_circuit(const LatticeCircuit& gamma, const DetourFamily& family) {
    // Edge soup: gamma minus the detoured arcs, plus the detours. Edges
    // carry their canonical indices from the inputs.
    std::map<Edge, int64_t> edges;
    const auto& verts = gamma.walk.vertices;
    for (size_t i = 0; i + 1 < verts.size(); ++i)
        edges[Edge{verts[i], verts[i + 1]}] = gamma.walk.edges[i];
    for (const ShieldedDetour& d : family.members) {
        const auto& q = d.detoured.vertices;
        for (size_t i = 0; i + 1 < q.size(); ++i) {
            if (edges.erase(Edge{q[i], q[i + 1]}) != 1)
                throw std::domain_error("detoured arc not on the circuit");
        }
        const auto& p = d.detour.vertices;
        for (size_t i = 0; i + 1 < p.size(); ++i)
            edges[Edge{p[i], p[i + 1]}] = d.detour.edges[i];
    }

    std::map<Vertex, std::vector<Vertex>> adj;
    for (const auto& [e, idx] : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    for (const auto& [v, nb] : adj)
        if (nb.size() != 2) throw std::domain_error("splice is not a single circuit");

    LatticePath walk;
    walk.lattice = LatticeKind::Primal;
    Vertex start = adj.begin()->first;
    Vertex prev = start, cur = std::min(adj[start][0], adj[start][1]);
    walk.vertices.push_back(start);
    while (true) {
        walk.vertices.push_back(cur);
        walk.edges.push_back(edges.at(Edge{prev, cur}));
        if (cur == start) break;
        const auto& nb = adj[cur];
        Vertex next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
    }
    if (walk.edges.size() != edges.size()) throw std::domain_error("splice is not a single circuit");

    if (winding_number(walk.vertices, Vertex{0, 0}) < 0) {
        std::reverse(walk.vertices.begin(), walk.vertices.end());
        std::reverse(walk.edges.begin(), walk.edges.end());
    }
    return make_circuit(std::move(walk));
}

ValidationReport validate_detour_lemmas(const Configuration& config, const LatticeCircuit& gamma,
                                        const std::vector<ShieldedDetour>& all_detours,
                                        const DetourFamily& family, const LatticeCircuit& sigma) {
    ValidationReport report;
    auto fail = [&](const std::string& msg) { report.failures.push_back(msg); };
    const Region& rg = config.region();
    CircuitContext ctx(config, gamma);

    // (a) Per-edge chosen detours are pairwise equal-or-vertex-disjoint.
    std::vector<int> chosen;  // indices into all_detours claimed by some edge
    {
        std::vector<char> claimed(rg.edge_count(), 0);
        int64_t unclaimed = ctx.L;
        for (size_t di = 0; di < all_detours.size() && unclaimed > 0; ++di) {
            bool used = false;
            for (int64_t q : all_detours[di].detoured.edges) {
                if (!claimed[q] && ctx.on_gamma_edge[q]) {
                    claimed[q] = 1;
                    --unclaimed;
                    used = true;
                }
            }
            if (used) chosen.push_back(static_cast<int>(di));
        }
        for (size_t x = 0; x < chosen.size(); ++x) {
            for (size_t y = x + 1; y < chosen.size(); ++y) {
                const auto& px = all_detours[chosen[x]].detour.vertices;
                const auto& py = all_detours[chosen[y]].detour.vertices;
                std::set<Vertex> sx(px.begin(), px.end());
                int shared = 0;
                for (Vertex v : py) shared += sx.count(v);
                if (shared != 0 && !(px.size() == py.size() && shared == (int)py.size()))
                    fail("chosen detours share vertices without being equal");
            }
        }
    }

    // (b) sigma is an open self-avoiding circuit in the annulus
    // surrounding the origin, and no longer than gamma.
    {
        const auto& sv = sigma.walk.vertices;
        if (sv.size() < 2 || !(sv.front() == sv.back())) fail("sigma is not closed");
        std::set<Vertex> uniq(sv.begin(), sv.end() - 1);
        if (uniq.size() + 1 != sv.size()) fail("sigma is not self-avoiding");
        for (Vertex v : sv)
            if (!config.region().contains(v)) fail("sigma leaves the annulus");
        for (int64_t e : sigma.walk.edges)
            if (!config.open(e)) fail("sigma uses a closed edge");
        if (sigma.winding_about_origin != 1 && sigma.winding_about_origin != -1)
            fail("sigma does not surround the origin");
        if (sigma.length() > gamma.length()) fail("sigma longer than gamma");
        int64_t expected = gamma.length() + family.total_detour_length -
                           family.total_detoured_length;
        if (sigma.length() != expected) fail("sigma length bookkeeping mismatch");

        // gamma's interior faces are contained in sigma's.
        std::vector<DoubledPoint> sigma_dbl;
        for (Vertex v : sv) sigma_dbl.push_back(doubled(v));
        DualGrid grid(rg);
        for (int64_t i = 0; i < grid.size(); ++i) {
            DualVertex d = grid.at(i);
            if (winding_number(ctx.gamma_dbl, doubled(d)) != 0 &&
                winding_number(sigma_dbl, doubled(d)) == 0) {
                fail("gamma interior face escapes sigma");
                break;
            }
        }
    }

    // Family bookkeeping and the per-detour length bound.
    {
        std::set<Vertex> used;
        for (const ShieldedDetour& d : family.members) {
            for (Vertex v : d.detoured.vertices) {
                if (used.count(v)) fail("family arcs share a vertex");
                used.insert(v);
            }
        }
        for (const ShieldedDetour& d : all_detours) {
            if (static_cast<double>(d.detour.length()) >
                d.epsilon * static_cast<double>(d.detoured.length()))
                fail("detour violates the epsilon length bound");
        }
        if (!family.members.empty() &&
            static_cast<double>(family.total_detour_length) >
                family.members.front().epsilon * static_cast<double>(gamma.length()))
            fail("family total length exceeds epsilon * #gamma");
    }

    // (c) inclusion-maximality of the greedy family.
    {
        std::set<Vertex> used;
        for (const ShieldedDetour& d : family.members)
            for (Vertex v : d.detoured.vertices) used.insert(v);
        for (const ShieldedDetour& d : all_detours) {
            bool selected = false;
            for (const ShieldedDetour& f : family.members)
                selected |= f.detour.vertices == d.detour.vertices;
            if (selected) continue;
            bool blocked = false;
            for (Vertex v : d.detoured.vertices) blocked |= used.count(v) > 0;
            if (!blocked) fail("unselected detour does not clash with the family");
        }
    }

    // (d) each detoured arc lies inside P joined with the complementary
    // arc of gamma.
    for (const ShieldedDetour& d : all_detours) {
        int64_t i0 = ctx.pos.at(d.detour.vertices.front());
        int64_t iM = ctx.pos.at(d.detour.vertices.back());
        // complementary arc, from wM around to w0
        bool q_forward = ctx.arc_path(i0, iM).edges == d.detoured.edges;
        std::vector<Vertex> comp =
            q_forward ? ctx.arc_vertices(iM, i0) : ctx.arc_vertices(i0, iM);
        std::vector<Vertex> curve = d.detour.vertices;  // w0 .. wM
        if (!q_forward) std::reverse(curve.begin(), curve.end());
        curve.insert(curve.end(), comp.begin() + 1, comp.end() - 1);
        for (size_t i = 1; i + 1 < d.detoured.vertices.size(); ++i) {
            if (winding_number(curve, d.detoured.vertices[i]) == 0) {
                fail("detoured arc vertex outside int(P U (gamma \\ Q))");
                break;
            }
        }
    }

    return report;
}

std::string detour_json_line(const ShieldedDetour& d) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "{\"seed_edge\":[[%d,%d],[%d,%d]],\"epsilon\":%.12g,\"P_len\":%lld,"
                  "\"Q_len\":%lld,\"shield_len\":%lld,\"endpoints\":[[%d,%d],[%d,%d]]}",
                  d.seed_edge.a.x, d.seed_edge.a.y, d.seed_edge.b.x, d.seed_edge.b.y, d.epsilon,
                  static_cast<long long>(d.detour.length()),
                  static_cast<long long>(d.detoured.length()),
                  static_cast<long long>(d.shield.edges.size()), d.w0().x, d.w0().y, d.wM().x,
                  d.wM().y);
    return buf;
}

}  // namespace perc
