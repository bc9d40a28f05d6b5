#include "perc/crossings.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "perc/winding.hpp"

namespace perc {

int64_t enclosed_area(const std::vector<Vertex>& closed_walk) {
    int64_t twice = 0;
    for (size_t i = 0; i + 1 < closed_walk.size(); ++i) {
        const Vertex& a = closed_walk[i];
        const Vertex& b = closed_walk[i + 1];
        twice += int64_t{a.x} * b.y - int64_t{b.x} * a.y;
    }
    return std::abs(twice) / 2;
}

LatticeCircuit make_circuit(LatticePath walk) {
    if (walk.vertices.empty() || !(walk.vertices.front() == walk.vertices.back()))
        throw std::domain_error("circuit walk must be closed");
    LatticeCircuit c;
    c.interior_area = enclosed_area(walk.vertices);
    c.winding_about_origin = winding_number(walk.vertices, Vertex{0, 0});
    c.walk = std::move(walk);
    return c;
}

bool horizontal_crossing_exists(const Configuration& config) {
    const Region& region = config.region();
    if (!region.is_box()) throw std::domain_error("crossings are defined on boxes");
    auto path = shortest_open_path(config, region.side_vertices(Side::Left),
                                   region.side_vertices(Side::Right));
    return path.has_value();
}

// --- biconnected components with a virtual left-right edge -------------

std::vector<char> crossing_edge_mask(const Configuration& config) {
    const Region& region = config.region();
    if (!region.is_box()) throw std::domain_error("crossings are defined on boxes");
    const int64_t nv = region.vertex_count();
    const int64_t vl = nv, vr = nv + 1;  // virtual side vertices
    const int64_t node_count = nv + 2;

    // Graph edges: open region edges, then virtual attachments, then the
    // single virtual left-right edge (last id).
    struct GEdge {
        int64_t u, v;
        int64_t canon;  // canonical region edge index, or -1
    };
    std::vector<GEdge> gedges;
    for (int64_t e = 0; e < region.edge_count(); ++e) {
        if (!config.open(e)) continue;
        Edge edge = region.edge_at(e);
        gedges.push_back({region.vertex_index(edge.a), region.vertex_index(edge.b), e});
    }
    for (const Vertex& v : region.side_vertices(Side::Left))
        gedges.push_back({vl, region.vertex_index(v), -1});
    for (const Vertex& v : region.side_vertices(Side::Right))
        gedges.push_back({vr, region.vertex_index(v), -1});
    const int64_t lr_edge = static_cast<int64_t>(gedges.size());
    gedges.push_back({vl, vr, -1});

    // CSR adjacency.
    std::vector<int64_t> deg(node_count, 0);
    for (const GEdge& g : gedges) {
        ++deg[g.u];
        ++deg[g.v];
    }
    std::vector<int64_t> start(node_count + 1, 0);
    for (int64_t i = 0; i < node_count; ++i) start[i + 1] = start[i] + deg[i];
    std::vector<int64_t> adj(start.back());
    {
        std::vector<int64_t> fill = start;
        for (int64_t i = 0; i < static_cast<int64_t>(gedges.size()); ++i) {
            adj[fill[gedges[i].u]++] = i;
            adj[fill[gedges[i].v]++] = i;
        }
    }

    std::vector<char> mask(region.edge_count(), 0);
    std::vector<int64_t> disc(node_count, -1), low(node_count, 0);
    std::vector<int64_t> estack;
    int64_t counter = 0;

    struct Frame {
        int64_t v;
        int64_t parent_edge;
        int64_t pos;  // next adjacency slot to examine
    };
    std::vector<Frame> stack;
    stack.push_back({vl, -1, start[vl]});
    disc[vl] = low[vl] = counter++;

    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.pos < start[f.v + 1]) {
            int64_t eid = adj[f.pos++];
            if (eid == f.parent_edge) continue;
            const GEdge& g = gedges[eid];
            int64_t w = (g.u == f.v) ? g.v : g.u;
            if (disc[w] < 0) {
                estack.push_back(eid);
                disc[w] = low[w] = counter++;
                stack.push_back({w, eid, start[w]});
            } else if (disc[w] < disc[f.v]) {
                estack.push_back(eid);
                low[f.v] = std::min(low[f.v], disc[w]);
            }
            continue;
        }
        // retreat
        int64_t child = f.v;
        int64_t child_edge = f.parent_edge;
        int64_t child_low = low[child];
        stack.pop_back();
        if (stack.empty()) break;
        Frame& pf = stack.back();
        low[pf.v] = std::min(low[pf.v], child_low);
        if (child_low >= disc[pf.v]) {
            // Pop one biconnected component, up to and including the tree
            // edge into the child.
            bool has_lr = false;
            std::vector<int64_t> comp;
            for (;;) {
                int64_t eid = estack.back();
                estack.pop_back();
                comp.push_back(eid);
                if (eid == lr_edge) has_lr = true;
                if (eid == child_edge) break;
            }
            if (has_lr)
                for (int64_t eid : comp)
                    if (gedges[eid].canon >= 0) mask[gedges[eid].canon] = 1;
        }
    }
    return mask;
}

namespace {

// Reflect a path back after computing on a vertically reflected config.
LatticePath reflect_path(const Region& region, const LatticePath& p) {
    LatticePath out;
    out.lattice = p.lattice;
    out.vertices.reserve(p.vertices.size());
    for (const Vertex& v : p.vertices) out.vertices.push_back({v.x, -v.y});
    for (size_t i = 0; i + 1 < out.vertices.size(); ++i)
        out.edges.push_back(region.edge_index(Edge{out.vertices[i], out.vertices[i + 1]}));
    return out;
}

CrossingResult lowest_crossing(const Configuration& config) {
    const Region& region = config.region();
    const int n = region.n();
    CrossingResult result;
    if (!horizontal_crossing_exists(config)) return result;

    std::vector<char> on_crossing = crossing_edge_mask(config);
    std::vector<DualVertex> seeds;
    for (int x = -n - 1; x <= n; ++x) seeds.push_back({x, -n - 1});
    std::vector<char> bottom = dual_closed_cluster(config, seeds);
    DualGrid grid(region);

    // Selected edges: on a crossing and bottom-attached through the dual.
    std::vector<int64_t> selected;
    for (int64_t e = 0; e < region.edge_count(); ++e) {
        if (!on_crossing[e]) continue;
        DualEdge d = dual_of(region.edge_at(e));
        bool attached = (grid.contains(d.a) && bottom[grid.index(d.a)]) ||
                        (grid.contains(d.b) && bottom[grid.index(d.b)]);
        if (attached) selected.push_back(e);
    }

    // The selected edges form a simple left-right path; order it.
    std::map<Vertex, std::vector<int64_t>> incident;
    for (int64_t e : selected) {
        Edge edge = region.edge_at(e);
        incident[edge.a].push_back(e);
        incident[edge.b].push_back(e);
    }
    Vertex startv{0, 0};
    bool have_start = false;
    for (const auto& [v, inc] : incident) {
        if (inc.size() == 1 && v.x == -n) {
            startv = v;
            have_start = true;
            break;
        }
    }
    if (!have_start) throw std::logic_error("lowest crossing: no left endpoint");

    LatticePath path;
    path.lattice = LatticeKind::Primal;
    path.vertices.push_back(startv);
    Vertex cur = startv;
    int64_t prev_edge = -1;
    while (path.edges.size() < selected.size()) {
        const auto& inc = incident[cur];
        int64_t next_edge = -1;
        for (int64_t e : inc)
            if (e != prev_edge) {
                if (next_edge >= 0) throw std::logic_error("lowest crossing: branching edge set");
                next_edge = e;
            }
        if (next_edge < 0) throw std::logic_error("lowest crossing: dead end");
        Edge edge = region.edge_at(next_edge);
        cur = (edge.a == cur) ? edge.b : edge.a;
        path.vertices.push_back(cur);
        path.edges.push_back(next_edge);
        prev_edge = next_edge;
    }
    if (cur.x != n) throw std::logic_error("lowest crossing: does not end on the right side");

    result.exists = true;
    result.length = static_cast<int64_t>(path.edges.size());
    result.path = std::move(path);
    return result;
}

}  // namespace

CrossingResult extremal_crossing(const Configuration& config, Extremal which) {
    const Region& region = config.region();
    if (!region.is_box()) throw std::domain_error("crossings are defined on boxes");
    if (which == Extremal::Lowest) return lowest_crossing(config);
    Configuration flipped = reflect_vertically(config);
    CrossingResult r = lowest_crossing(flipped);
    if (r.exists) r.path = reflect_path(region, *r.path);
    return r;
}

CrossingResult shortest_crossing(const Configuration& config) {
    const Region& region = config.region();
    if (!region.is_box()) throw std::domain_error("crossings are defined on boxes");
    CrossingResult result;
    auto path = shortest_open_path(config, region.side_vertices(Side::Left),
                                   region.side_vertices(Side::Right));
    if (!path) return result;
    result.exists = true;
    result.length = static_cast<int64_t>(path->edges.size());
    result.path = std::move(path);
    return result;
}

int max_disjoint_crossings(const Configuration& config) {
    const Region& region = config.region();
    if (!region.is_box()) throw std::domain_error("crossings are defined on boxes");
    MengerOptions opt;
    opt.want_witnesses = false;
    return max_disjoint_open_paths(config, region.side_vertices(Side::Left),
                                   region.side_vertices(Side::Right), opt)
        .count;
}

// --- innermost circuit --------------------------------------------------

namespace {

// Face-set machinery: faces are identified with dual vertices (the face's
// center); the face of dual vertex d has corners (d.x,d.y)..(d.x+1,d.y+1).
struct InnermostSolver {
    const Configuration& config;
    const Region& region;
    DualGrid grid;
    int n, N;
    int64_t calls = 0;
    std::optional<std::vector<char>> best;
    int64_t best_faces = 0;

    explicit InnermostSolver(const Configuration& c)
        : config(c), region(c.region()), grid(c.region()), n(c.region().n()),
          N(c.region().outer()) {}

    int rad(DualVertex d) const {  // face max-norm radius minus 1/2
        return std::max(std::max(d.x, -1 - d.x), std::max(d.y, -1 - d.y));
    }

    // Replace F by the complement of the border-reachable exterior
    // (4-adjacency over non-F faces). Returns false if F touches the
    // outermost face ring (no surrounding circuit fits in the annulus).
    bool fill(std::vector<char>& F) const {
        std::deque<int64_t> queue;
        std::vector<char> ext(grid.size(), 0);
        for (int64_t i = 0; i < grid.size(); ++i) {
            DualVertex d = grid.at(i);
            if (rad(d) != N) continue;
            if (F[i]) return false;
            ext[i] = 1;
            queue.push_back(i);
        }
        while (!queue.empty()) {
            int64_t cur = queue.front();
            queue.pop_front();
            DualVertex d = grid.at(cur);
            for (int dir = 0; dir < 4; ++dir) {
                DualVertex d2{d.x + kDirections[dir].x, d.y + kDirections[dir].y};
                if (!grid.contains(d2)) continue;
                int64_t id = grid.index(d2);
                if (ext[id] || F[id]) continue;
                ext[id] = 1;
                queue.push_back(id);
            }
        }
        for (int64_t i = 0; i < grid.size(); ++i) F[i] = !ext[i];
        return true;
    }

    // First pinch vertex in lexicographic order: a lattice vertex whose
    // four surrounding faces alternate in/out diagonally. Returns the two
    // missing faces through *out.
    bool find_pinch(const std::vector<char>& F, DualVertex out[2]) const {
        for (int x = -N; x <= N; ++x) {
            for (int y = -N; y <= N; ++y) {
                DualVertex sw{x - 1, y - 1}, se{x, y - 1}, nw{x - 1, y}, ne{x, y};
                bool in_sw = F[grid.index(sw)], in_se = F[grid.index(se)];
                bool in_nw = F[grid.index(nw)], in_ne = F[grid.index(ne)];
                if (in_sw && in_ne && !in_se && !in_nw) {
                    out[0] = se;
                    out[1] = nw;
                    return true;
                }
                if (in_se && in_nw && !in_sw && !in_ne) {
                    out[0] = sw;
                    out[1] = ne;
                    return true;
                }
            }
        }
        return false;
    }

    void solve(std::vector<char> F) {
        if (++calls > 4096) throw std::logic_error("innermost circuit: branching exploded");
        if (!fill(F)) return;
        int64_t faces = std::count(F.begin(), F.end(), char{1});
        if (best && faces >= best_faces) return;
        DualVertex pinch[2];
        if (!find_pinch(F, pinch)) {
            best = std::move(F);
            best_faces = faces;
            return;
        }
        for (int b = 0; b < 2; ++b) {
            std::vector<char> F2 = F;
            F2[grid.index(pinch[b])] = 1;
            std::vector<char> cluster = dual_closed_cluster(config, {pinch[b]});
            for (int64_t i = 0; i < grid.size(); ++i)
                if (cluster[i]) F2[i] = 1;
            solve(std::move(F2));
        }
    }
};

// Trace the boundary circuit of a pinch-free, simply connected face set.
LatticePath trace_boundary(const Configuration& config, const std::vector<char>& F) {
    const Region& region = config.region();
    DualGrid grid(region);
    std::map<Vertex, std::vector<int64_t>> incident;
    int64_t boundary_edges = 0;
    for (int64_t e = 0; e < region.edge_count(); ++e) {
        DualEdge d = dual_of(region.edge_at(e));
        bool ina = grid.contains(d.a) && F[grid.index(d.a)];
        bool inb = grid.contains(d.b) && F[grid.index(d.b)];
        if (ina == inb) continue;
        if (!config.open(e)) throw std::logic_error("innermost circuit: closed boundary edge");
        Edge edge = region.edge_at(e);
        incident[edge.a].push_back(e);
        incident[edge.b].push_back(e);
        ++boundary_edges;
    }
    if (boundary_edges == 0) throw std::logic_error("innermost circuit: empty boundary");
    for (const auto& [v, inc] : incident)
        if (inc.size() != 2) throw std::logic_error("innermost circuit: pinched boundary");

    Vertex startv = incident.begin()->first;
    LatticePath walk;
    walk.lattice = LatticeKind::Primal;
    walk.vertices.push_back(startv);
    // Deterministic orientation: first step toward the smaller neighbor.
    int64_t first = incident[startv][0], second = incident[startv][1];
    Edge ef = region.edge_at(first), es = region.edge_at(second);
    Vertex wf = (ef.a == startv) ? ef.b : ef.a;
    Vertex ws = (es.a == startv) ? es.b : es.a;
    int64_t cur_edge = (wf < ws) ? first : second;
    Vertex cur = startv;
    while (true) {
        Edge edge = region.edge_at(cur_edge);
        cur = (edge.a == cur) ? edge.b : edge.a;
        walk.vertices.push_back(cur);
        walk.edges.push_back(cur_edge);
        if (cur == startv) break;
        const auto& inc = incident[cur];
        cur_edge = (inc[0] == cur_edge) ? inc[1] : inc[0];
    }
    if (static_cast<int64_t>(walk.edges.size()) != boundary_edges)
        throw std::logic_error("innermost circuit: boundary is not a single circuit");
    return walk;
}

}  // namespace

CircuitResult innermost_circuit(const Configuration& config) {
    const Region& region = config.region();
    if (region.is_box()) throw std::domain_error("circuits are defined on annuli");
    const int n = region.n();
    InnermostSolver solver(config);
    DualGrid grid(region);

    // Forced interior: every face within max-norm n + 1/2 of the origin
    // (a circuit with vertices outside B(n) surrounds all of them), plus
    // every closed dual cluster attached to that block through the
    // annulus's edges.
    std::vector<char> F(grid.size(), 0);
    for (int x = -n - 1; x <= n; ++x)
        for (int y = -n - 1; y <= n; ++y) F[grid.index({x, y})] = 1;
    std::vector<DualVertex> ring;
    for (int x = -n - 1; x <= n; ++x) {
        ring.push_back({x, -n - 1});
        ring.push_back({x, n});
        ring.push_back({-n - 1, x});
        ring.push_back({n, x});
    }
    std::vector<char> attached = dual_closed_cluster(config, ring);
    for (int64_t i = 0; i < grid.size(); ++i)
        if (attached[i]) F[i] = 1;

    solver.solve(std::move(F));
    CircuitResult result;
    if (!solver.best) return result;

    LatticePath walk = trace_boundary(config, *solver.best);
    LatticeCircuit circuit = make_circuit(std::move(walk));
    if (circuit.winding_about_origin == -1) {
        std::reverse(circuit.walk.vertices.begin(), circuit.walk.vertices.end());
        std::reverse(circuit.walk.edges.begin(), circuit.walk.edges.end());
        circuit.winding_about_origin = 1;
    }
    if (circuit.winding_about_origin != 1)
        throw std::logic_error("innermost circuit: boundary does not surround the origin");
    result.exists = true;
    result.length = circuit.length();
    result.circuit = std::move(circuit);
    return result;
}

// --- shortest surrounding circuit via the winding cover ------------------

CircuitResult shortest_enclosing_circuit(const Configuration& config) {
    const Region& region = config.region();
    if (region.is_box()) throw std::domain_error("circuits are defined on annuli");
    const int n = region.n();
    const int N = region.outer();
    const int64_t nv = region.vertex_count();
    CircuitResult result;

    // Cut: vertical edges {(x,0),(x,1)} with x >= n+1 (the annulus
    // contains no other edges across the segment y = 1/2, x > 0), so a
    // closed walk's sheet displacement equals its winding about the
    // origin. Sheets -1..2 suffice for a geodesic between adjacent lifts.
    auto cut_delta = [&](Vertex from, Vertex to) -> int {
        if (from.x != to.x || from.x < n + 1) return 0;
        if (from.y == 0 && to.y == 1) return 1;
        if (from.y == 1 && to.y == 0) return -1;
        return 0;
    };

    std::vector<Vertex> cut_vertices;
    for (int x = n + 1; x <= N; ++x) {
        cut_vertices.push_back({x, 0});
        cut_vertices.push_back({x, 1});
    }

    const int kSheets = 4, kBase = 1;  // sheet s stored at s + kBase
    std::vector<int32_t> dist(nv * kSheets);
    std::vector<int64_t> parent(nv * kSheets);
    auto state = [&](int64_t vid, int sheet) { return vid * kSheets + (sheet + kBase); };

    int64_t best_len = -1;
    Vertex best_vertex{0, 0};
    std::vector<int64_t> best_parent;

    for (const Vertex& v : cut_vertices) {
        int64_t vid = region.vertex_index(v);
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), int64_t{-1});
        std::deque<int64_t> queue;
        dist[state(vid, 0)] = 0;
        queue.push_back(state(vid, 0));
        int64_t goal = state(vid, 1);
        while (!queue.empty()) {
            int64_t cur = queue.front();
            queue.pop_front();
            if (cur == goal) break;
            if (best_len >= 0 && dist[cur] >= best_len) continue;
            int64_t cvid = cur / kSheets;
            int sheet = static_cast<int>(cur % kSheets) - kBase;
            Vertex cv = region.vertex_at(cvid);
            for (int dir = 0; dir < 4; ++dir) {
                Vertex w{cv.x + kDirections[dir].x, cv.y + kDirections[dir].y};
                if (!region.contains(w)) continue;
                Edge e{cv, w};
                if (!region.contains(e)) continue;
                if (!config.open(region.edge_index(e))) continue;
                int s2 = sheet + cut_delta(cv, w);
                if (s2 < -1 || s2 > 2) continue;
                int64_t nxt = state(region.vertex_index(w), s2);
                if (dist[nxt] >= 0) continue;
                dist[nxt] = dist[cur] + 1;
                parent[nxt] = cur;
                queue.push_back(nxt);
            }
        }
        if (dist[goal] >= 0 && (best_len < 0 || dist[goal] < best_len)) {
            best_len = dist[goal];
            best_vertex = v;
            best_parent = parent;
        }
    }
    if (best_len < 0) return result;

    // Project the cover geodesic and loop-erase defensively.
    std::vector<Vertex> seq;
    int64_t cur = state(region.vertex_index(best_vertex), 1);
    while (cur >= 0) {
        seq.push_back(region.vertex_at(cur / kSheets));
        cur = best_parent[cur];
    }
    std::reverse(seq.begin(), seq.end());
    for (size_t i = 0; i < seq.size(); ++i) {
        for (size_t j = seq.size(); j-- > i + 1;) {
            if (seq[j] == seq[i] && !(i == 0 && j + 1 == seq.size())) {
                seq.erase(seq.begin() + i + 1, seq.begin() + j + 1);
                break;
            }
        }
    }

    LatticePath walk;
    walk.lattice = LatticeKind::Primal;
    walk.vertices = seq;
    for (size_t i = 0; i + 1 < seq.size(); ++i)
        walk.edges.push_back(region.edge_index(Edge{seq[i], seq[i + 1]}));
    LatticeCircuit circuit = make_circuit(std::move(walk));
    if (circuit.winding_about_origin == -1) {
        std::reverse(circuit.walk.vertices.begin(), circuit.walk.vertices.end());
        std::reverse(circuit.walk.edges.begin(), circuit.walk.edges.end());
        circuit.winding_about_origin = 1;
    }
    if (circuit.winding_about_origin != 1)
        throw std::logic_error("shortest circuit: projection does not surround the origin");
    result.exists = true;
    result.length = circuit.length();
    result.circuit = std::move(circuit);
    return result;
}

}  // namespace perc
