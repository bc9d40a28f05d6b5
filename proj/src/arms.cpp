#include "perc/arms.hpp"

#include <atomic>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <thread>

#include "perc/rng.hpp"

namespace perc {

namespace {

// L-inf distance from the face center d + (1/2,1/2) to the origin,
// rounded down: faces with face_rad == k form the dual ring just outside
// the box of radius k.
int face_rad(DualVertex d) {
    int rx = d.x >= 0 ? d.x : -1 - d.x;
    int ry = d.y >= 0 ? d.y : -1 - d.y;
    return rx > ry ? rx : ry;
}

std::vector<char> vertex_mask(const Region& rg, const std::function<bool(Vertex)>& pred) {
    std::vector<char> mask(rg.vertex_count(), 0);
    for (int64_t i = 0; i < rg.vertex_count(); ++i) mask[i] = pred(rg.vertex_at(i)) ? 1 : 0;
    return mask;
}

std::vector<Vertex> vertices_where(const Region& rg, const std::function<bool(Vertex)>& pred) {
    std::vector<Vertex> out;
    for (int64_t i = 0; i < rg.vertex_count(); ++i) {
        Vertex v = rg.vertex_at(i);
        if (pred(v)) out.push_back(v);
    }
    return out;
}

std::vector<char> dual_mask(const DualGrid& grid, const std::function<bool(DualVertex)>& pred) {
    std::vector<char> mask(grid.size(), 0);
    for (int64_t i = 0; i < grid.size(); ++i) mask[i] = pred(grid.at(i)) ? 1 : 0;
    return mask;
}

// Does the mask of a closed-dual cluster reach any face with face_rad == k?
bool cluster_reaches_rad(const DualGrid& grid, const std::vector<char>& cluster, int k) {
    for (int64_t i = 0; i < grid.size(); ++i)
        if (cluster[i] && face_rad(grid.at(i)) == k) return true;
    return false;
}

void require_box_inside(const Region& rg, int xlo, int xhi, int ylo, int yhi) {
    for (int x = xlo; x <= xhi; ++x)
        for (int y = ylo; y <= yhi; ++y)
            if (!rg.contains(Vertex{x, y})) throw std::domain_error("arm box outside region");
}

}  // namespace

bool three_arm_origin(const Configuration& config, int r) {
    if (r <= 0) return true;
    const Region& rg = config.region();
    require_box_inside(rg, -r, r, -r, r);
    Edge e{{0, 0}, {1, 0}};
    if (!config.open(e)) return false;

    auto allowed = vertex_mask(rg, [r](Vertex v) { return Region::radius(v) <= r; });
    auto targets = vertices_where(rg, [r](Vertex v) { return Region::radius(v) == r; });
    MengerOptions opt;
    opt.contracted_sources = true;
    opt.excluded_edge = rg.edge_index(e);
    opt.allowed = &allowed;
    opt.max_paths = 2;
    opt.want_witnesses = false;
    if (max_disjoint_open_paths(config, {{0, 0}, {1, 0}}, targets, opt).count < 2) return false;

    DualGrid grid(rg);
    auto dallowed = dual_mask(grid, [r](DualVertex d) { return face_rad(d) <= r; });
    auto cluster = dual_closed_cluster(config, {DualVertex{0, -1}}, &dallowed);
    return cluster_reaches_rad(grid, cluster, r);
}

bool three_arm_at_edge(const Configuration& config, const Edge& e, int m) {
    if (m < 0) throw std::domain_error("negative arm radius");
    if (m == 0) return true;
    const Region& rg = config.region();
    int xlo, xhi, ylo, yhi;
    if (e.orientation() == Orientation::Horizontal) {
        xlo = e.a.x - m + 1, xhi = e.a.x + m;
        ylo = e.a.y - m, yhi = e.a.y + m;
    } else {
        xlo = e.a.x - m, xhi = e.a.x + m;
        ylo = e.a.y - m + 1, yhi = e.a.y + m;
    }
    require_box_inside(rg, xlo, xhi, ylo, yhi);
    if (!config.open(e)) return false;

    auto inside = [=](Vertex v) { return v.x >= xlo && v.x <= xhi && v.y >= ylo && v.y <= yhi; };
    auto allowed = vertex_mask(rg, inside);
    auto targets = vertices_where(rg, [=](Vertex v) {
        return inside(v) && (v.x == xlo || v.x == xhi || v.y == ylo || v.y == yhi);
    });
    MengerOptions opt;
    opt.contracted_sources = true;
    opt.excluded_edge = rg.edge_index(e);
    opt.allowed = &allowed;
    opt.max_paths = 2;
    opt.want_witnesses = false;
    if (max_disjoint_open_paths(config, {e.a, e.b}, targets, opt).count < 2) return false;

    DualGrid grid(rg);
    auto face_inside = [=](DualVertex d) {
        return d.x >= xlo - 1 && d.x <= xhi && d.y >= ylo - 1 && d.y <= yhi;
    };
    auto on_ring = [=](DualVertex d) {
        return face_inside(d) && (d.x == xlo - 1 || d.x == xhi || d.y == ylo - 1 || d.y == yhi);
    };
    auto dallowed = dual_mask(grid, face_inside);
    return closed_dual_path(config, dual_of(e), on_ring, &dallowed).has_value();
}

bool three_arm_annulus(const Configuration& config, int m, int n) {
    if (m < 1 || m > n) throw std::domain_error("need 1 <= m <= n");
    if (m == n) return true;
    const Region& rg = config.region();
    require_box_inside(rg, -n, n, -n, n);

    auto allowed = vertex_mask(rg, [=](Vertex v) {
        int r = Region::radius(v);
        return r >= m && r <= n;
    });
    auto sources = vertices_where(rg, [=](Vertex v) { return Region::radius(v) == m; });
    auto targets = vertices_where(rg, [=](Vertex v) { return Region::radius(v) == n; });
    MengerOptions opt;
    opt.allowed = &allowed;
    opt.max_paths = 2;
    opt.want_witnesses = false;
    if (max_disjoint_open_paths(config, sources, targets, opt).count < 2) return false;

    DualGrid grid(rg);
    auto dallowed = dual_mask(grid, [=](DualVertex d) {
        int r = face_rad(d);
        return r >= m && r <= n;
    });
    std::vector<DualVertex> seeds;
    for (int64_t i = 0; i < grid.size(); ++i)
        if (face_rad(grid.at(i)) == m) seeds.push_back(grid.at(i));
    auto cluster = dual_closed_cluster(config, seeds, &dallowed);
    return cluster_reaches_rad(grid, cluster, n);
}

bool three_arm_halfplane(const Configuration& config, int r) {
    if (r <= 0) return true;
    const Region& rg = config.region();
    require_box_inside(rg, -r, r, 0, r);
    Edge e{{0, 0}, {1, 0}};
    if (!config.open(e)) return false;

    auto allowed =
        vertex_mask(rg, [r](Vertex v) { return v.y >= 0 && Region::radius(v) <= r; });
    auto targets =
        vertices_where(rg, [r](Vertex v) { return v.y >= 0 && Region::radius(v) == r; });
    MengerOptions opt;
    opt.contracted_sources = true;
    opt.excluded_edge = rg.edge_index(e);
    opt.allowed = &allowed;
    opt.max_paths = 2;
    opt.want_witnesses = false;
    if (max_disjoint_open_paths(config, {{0, 0}, {1, 0}}, targets, opt).count < 2) return false;

    DualGrid grid(rg);
    auto dallowed =
        dual_mask(grid, [r](DualVertex d) { return d.y >= 0 && face_rad(d) <= r; });
    auto target = [r](DualVertex d) { return d.y >= 0 && face_rad(d) == r; };
    return closed_dual_path(config, dual_of(e), target, &dallowed).has_value();
}

namespace {

struct FiveArmFrame {
    // Prescribed incident edges, in arm order gamma_1 .. gamma_5.
    Edge closed1_partner, open2, open3, closed4_partner, open5;
    // Far endpoints where the arms continue beyond the prescribed edges.
    Vertex src2, src3, src5;
    DualVertex dsrc1, dsrc4;
    // Dual vertices adjacent to w that the closed arms may not revisit.
    DualVertex dexcl_a, dexcl_b;
};

FiveArmFrame five_arm_frame(Vertex w) {
    FiveArmFrame f;
    f.closed1_partner = Edge{{w.x - 1, w.y + 1}, {w.x, w.y + 1}};
    f.open2 = Edge{{w.x, w.y}, {w.x, w.y + 1}};
    f.open3 = Edge{{w.x, w.y}, {w.x + 1, w.y}};
    f.closed4_partner = Edge{{w.x - 1, w.y - 1}, {w.x, w.y - 1}};
    f.open5 = Edge{{w.x - 1, w.y}, {w.x, w.y}};
    f.src2 = {w.x, w.y + 1};
    f.src3 = {w.x + 1, w.y};
    f.src5 = {w.x - 1, w.y};
    f.dsrc1 = {w.x - 1, w.y + 1};
    f.dsrc4 = {w.x - 1, w.y - 2};
    f.dexcl_a = {w.x - 1, w.y};
    f.dexcl_b = {w.x - 1, w.y - 1};
    return f;
}

// The five prescribed incident edges all lie in the region and carry the
// prescribed states (gamma_2, gamma_3, gamma_5 open; the primal partners
// of the first dual edges of gamma_1, gamma_4 closed).
bool five_arm_seed_ok(const Configuration& config, const FiveArmFrame& f) {
    const Region& rg = config.region();
    for (const Edge* e : {&f.closed1_partner, &f.open2, &f.open3, &f.closed4_partner, &f.open5})
        if (!rg.contains(*e)) return false;
    return config.open(f.open2) && config.open(f.open3) && config.open(f.open5) &&
           config.closed(rg.edge_index(f.closed1_partner)) &&
           config.closed(rg.edge_index(f.closed4_partner));
}

}  // namespace

bool five_arm_at_vertex(const Configuration& config, Vertex w, int r) {
    if (r <= 0) return true;
    const Region& rg = config.region();
    require_box_inside(rg, -r, r, -r, r);
    FiveArmFrame f = five_arm_frame(w);
    if (!five_arm_seed_ok(config, f)) return false;

    auto allowed =
        vertex_mask(rg, [&](Vertex v) { return Region::radius(v) <= r && !(v == w); });
    auto targets = vertices_where(rg, [r](Vertex v) { return Region::radius(v) == r; });
    MengerOptions opt;
    opt.allowed = &allowed;
    opt.max_paths = 3;
    opt.want_witnesses = false;
    if (max_disjoint_open_paths(config, {f.src2, f.src3, f.src5}, targets, opt).count < 3)
        return false;

    DualGrid grid(rg);
    auto dallowed = dual_mask(grid, [&](DualVertex d) {
        return face_rad(d) <= r && !(d == f.dexcl_a) && !(d == f.dexcl_b);
    });
    auto dtargets = dual_mask(grid, [r](DualVertex d) { return face_rad(d) == r; });
    MengerOptions dopt;
    dopt.allowed = &dallowed;
    dopt.max_paths = 2;
    dopt.want_witnesses = false;
    return max_disjoint_closed_dual_paths(config, {f.dsrc1, f.dsrc4}, dtargets, dopt).count >= 2;
}

std::optional<Vertex> five_arm_point_search(const Configuration& config,
                                            const VertexRect& search_box,
                                            const FiveArmZones& zones) {
    const Region& rg = config.region();
    DualGrid grid(rg);

    for (int x = search_box.xmin; x <= search_box.xmax; ++x) {
        for (int y = search_box.ymin; y <= search_box.ymax; ++y) {
            Vertex w{x, y};
            if (!rg.contains(w)) continue;
            FiveArmFrame f = five_arm_frame(w);
            if (!five_arm_seed_ok(config, f)) continue;

            // Open arms: one per zone; zones are capacity-1 target groups.
            std::vector<int32_t> tg(rg.vertex_count(), -1);
            std::vector<Vertex> targets;
            for (int64_t i = 0; i < rg.vertex_count(); ++i) {
                Vertex v = rg.vertex_at(i);
                int32_t g = zones.open2(v) ? 0 : zones.open3(v) ? 1 : zones.open5(v) ? 2 : -1;
                tg[i] = g;
                if (g >= 0) targets.push_back(v);
            }
            auto allowed = vertex_mask(rg, [&](Vertex v) { return !(v == w); });
            MengerOptions opt;
            opt.allowed = &allowed;
            opt.max_paths = 3;
            opt.target_group = &tg;
            opt.group_count = 3;
            DisjointPaths open_arms = max_disjoint_open_paths(
                config, {f.src2, f.src3, f.src5}, targets, opt);
            if (open_arms.count < 3) continue;

            bool paired = true;
            for (const LatticePath& path : open_arms.witnesses) {
                Vertex s = path.vertices.front(), t = path.vertices.back();
                bool ok = (s == f.src2 && zones.open2(t)) || (s == f.src3 && zones.open3(t)) ||
                          (s == f.src5 && zones.open5(t));
                if (!ok) paired = false;
            }
            if (!paired) continue;

            // Closed dual arms, likewise zone-grouped.
            std::vector<int32_t> dtg(grid.size(), -1);
            std::vector<char> dtargets(grid.size(), 0);
            for (int64_t i = 0; i < grid.size(); ++i) {
                DualVertex d = grid.at(i);
                int32_t g = zones.closed1(d) ? 0 : zones.closed4(d) ? 1 : -1;
                dtg[i] = g;
                dtargets[i] = g >= 0;
            }
            auto dallowed = dual_mask(
                grid, [&](DualVertex d) { return !(d == f.dexcl_a) && !(d == f.dexcl_b); });
            MengerOptions dopt;
            dopt.allowed = &dallowed;
            dopt.max_paths = 2;
            dopt.target_group = &dtg;
            dopt.group_count = 2;
            DisjointPaths closed_arms =
                max_disjoint_closed_dual_paths(config, {f.dsrc1, f.dsrc4}, dtargets, dopt);
            if (closed_arms.count < 2) continue;

            paired = true;
            for (const LatticePath& path : closed_arms.witnesses) {
                DualVertex s = path.dual_vertices.front(), t = path.dual_vertices.back();
                bool ok = (s == f.dsrc1 && zones.closed1(t)) || (s == f.dsrc4 && zones.closed4(t));
                if (!ok) paired = false;
            }
            if (paired) return w;
        }
    }
    return std::nullopt;
}

bool six_arm_annulus(const Configuration& config, int m, int n, int defect_budget) {
    if (m < 1 || m > n) throw std::domain_error("need 1 <= m <= n");
    if (defect_budget < 0) throw std::domain_error("negative defect budget");
    if (m == n) return true;
    const Region& rg = config.region();
    require_box_inside(rg, -n, n, -n, n);

    auto allowed = vertex_mask(rg, [=](Vertex v) {
        int r = Region::radius(v);
        return r >= m && r <= n;
    });
    auto sources = vertices_where(rg, [=](Vertex v) { return Region::radius(v) == m; });
    auto targets = vertices_where(rg, [=](Vertex v) { return Region::radius(v) == n; });
    MengerOptions opt;
    opt.allowed = &allowed;
    opt.max_paths = 3;
    opt.want_witnesses = false;
    if (max_disjoint_open_paths(config, sources, targets, opt).count < 3) return false;

    DualGrid grid(rg);
    auto dallowed = dual_mask(grid, [=](DualVertex d) {
        int r = face_rad(d);
        return r >= m && r <= n;
    });
    std::vector<DualVertex> dsources;
    for (int64_t i = 0; i < grid.size(); ++i)
        if (dallowed[i] && face_rad(grid.at(i)) == m) dsources.push_back(grid.at(i));
    std::vector<char> dtargets(grid.size(), 0);
    for (int64_t i = 0; i < grid.size(); ++i)
        if (face_rad(grid.at(i)) == n) dtargets[i] = 1;

    MengerOptions dopt;
    dopt.allowed = &dallowed;
    if (defect_budget == 0) {
        dopt.max_paths = 3;
        dopt.want_witnesses = false;
        return max_disjoint_closed_dual_paths(config, dsources, dtargets, dopt).count >= 3;
    }

    dopt.max_paths = 2;
    DisjointPaths pure = max_disjoint_closed_dual_paths(config, dsources, dtargets, dopt);
    if (pure.count < 2) return false;

    // Third crossing, disjoint from the two defect-free witnesses, with up
    // to defect_budget open (defect) edges: 0-1 BFS over (face, defects).
    std::vector<char> usable = dallowed;
    for (const LatticePath& path : pure.witnesses)
        for (DualVertex d : path.dual_vertices) usable[grid.index(d)] = 0;

    const int kInf = std::numeric_limits<int>::max();
    std::vector<int> defects(grid.size(), kInf);
    std::deque<int64_t> queue;
    for (DualVertex d : dsources) {
        int64_t i = grid.index(d);
        if (usable[i] && defects[i] > 0) {
            defects[i] = 0;
            queue.push_back(i);
        }
    }
    while (!queue.empty()) {
        int64_t i = queue.front();
        queue.pop_front();
        DualVertex d = grid.at(i);
        if (face_rad(d) == n) return true;
        for (const Vertex& dir : kDirections) {
            DualVertex nd{d.x + dir.x, d.y + dir.y};
            if (!grid.contains(nd)) continue;
            int64_t j = grid.index(nd);
            if (!usable[j]) continue;
            Edge partner = primal_of(d, nd);
            if (!rg.contains(partner)) continue;
            int cost = config.open(partner) ? 1 : 0;
            int nt = defects[i] + cost;
            if (nt > defect_budget || nt >= defects[j]) continue;
            defects[j] = nt;
            if (cost == 0)
                queue.push_front(j);
            else
                queue.push_back(j);
        }
    }
    return false;
}

bool arm_event_occurs(const Configuration& config, const ArmSpec& spec) {
    switch (spec.pattern) {
        case ArmPattern::A3_edge:
            return three_arm_origin(config, spec.radius());
        case ArmPattern::A3_annulus:
            return three_arm_annulus(config, spec.m, spec.n);
        case ArmPattern::A5_point:
            return five_arm_origin(config, spec.radius());
        case ArmPattern::A3_halfplane:
            return three_arm_halfplane(config, spec.radius());
        case ArmPattern::A6_annulus:
            return six_arm_annulus(config, spec.m, spec.n, spec.defect_budget);
    }
    throw std::logic_error("unknown arm pattern");
}

Region arm_enclosing_region(const ArmSpec& spec) {
    int r;
    switch (spec.pattern) {
        case ArmPattern::A3_annulus:
        case ArmPattern::A6_annulus:
            r = spec.n;
            break;
        default:
            r = spec.radius();
            break;
    }
    return Region::box(r > 0 ? r : 1);
}

namespace {

// Prescribed (edge index, must-be-open) bits that allow rejecting a
// sample without materializing the configuration.
std::vector<std::pair<int64_t, bool>> precheck_bits(const ArmSpec& spec, const Region& rg) {
    std::vector<std::pair<int64_t, bool>> bits;
    Edge e01{{0, 0}, {1, 0}};
    switch (spec.pattern) {
        case ArmPattern::A3_edge:
        case ArmPattern::A3_halfplane:
            if (spec.radius() > 0) bits.emplace_back(rg.edge_index(e01), true);
            break;
        case ArmPattern::A5_point:
            if (spec.radius() > 0) {
                FiveArmFrame f = five_arm_frame({0, 0});
                bits.emplace_back(rg.edge_index(f.open2), true);
                bits.emplace_back(rg.edge_index(f.open3), true);
                bits.emplace_back(rg.edge_index(f.open5), true);
                bits.emplace_back(rg.edge_index(f.closed1_partner), false);
                bits.emplace_back(rg.edge_index(f.closed4_partner), false);
            }
            break;
        default:
            break;
    }
    return bits;
}

const char* statistic_name(ArmPattern pattern) {
    switch (pattern) {
        case ArmPattern::A3_edge:
            return "pi3";
        case ArmPattern::A3_annulus:
            return "pi3_annulus";
        case ArmPattern::A5_point:
            return "pi5";
        case ArmPattern::A3_halfplane:
            return "pi3_halfplane";
        case ArmPattern::A6_annulus:
            return "pi6";
    }
    return "arm";
}

}  // namespace

EstimateRecord arm_probability(const ArmSpec& spec, int64_t samples, uint64_t master_seed,
                               double p, int threads) {
    if (samples < 1) throw std::domain_error("need samples >= 1");
    Region rg = arm_enclosing_region(spec);
    auto bits = precheck_bits(spec, rg);

    std::atomic<int64_t> next{0};
    std::atomic<int64_t> total{0};
    const int64_t chunk = 1024;
    auto worker = [&]() {
        int64_t local = 0;
        for (;;) {
            int64_t lo = next.fetch_add(chunk);
            if (lo >= samples) break;
            int64_t hi = lo + chunk < samples ? lo + chunk : samples;
            for (int64_t id = lo; id < hi; ++id) {
                bool viable = true;
                for (auto [idx, want_open] : bits)
                    if (edge_open_bit(master_seed, id, idx, p) != want_open) {
                        viable = false;
                        break;
                    }
                if (!viable) continue;
                Configuration config = sample_config(rg, p, master_seed, id);
                if (arm_event_occurs(config, spec)) ++local;
            }
        }
        total.fetch_add(local);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    int64_t successes = total.load();
    EstimateRecord rec;
    rec.statistic = statistic_name(spec.pattern);
    bool annular = spec.pattern == ArmPattern::A3_annulus || spec.pattern == ArmPattern::A6_annulus;
    rec.n = annular ? spec.n : spec.radius();
    rec.m = annular ? spec.m : -1;
    rec.samples = samples;
    rec.estimate = static_cast<double>(successes) / static_cast<double>(samples);
    Interval ci = wilson_interval(successes, samples);
    rec.ci_low = ci.low;
    rec.ci_high = ci.high;
    rec.master_seed = master_seed;
    return rec;
}

RatioRecord quasimultiplicativity_check(int m, int n, int64_t samples, uint64_t master_seed,
                                        int threads) {
    if (m < 1 || m > n) throw std::domain_error("need 1 <= m <= n");
    RatioRecord rec;
    rec.m = m;
    rec.n = n;
    rec.samples = samples;
    rec.master_seed = master_seed;

    uint64_t seed_n = mix64(master_seed ^ 0x517cc1b727220a95ull);
    EstimateRecord pn = arm_probability({ArmPattern::A3_edge, 0, n}, samples, seed_n, 0.5, threads);
    rec.pi3_n = pn.estimate;

    if (m == n) {
        // pi3(n,n) = 1 by convention and the two box estimates coincide.
        rec.pi3_m = pn.estimate;
        rec.pi3_mn = 1.0;
        rec.ratio = rec.ci_low = rec.ci_high = 1.0;
        return rec;
    }

    uint64_t seed_m = mix64(master_seed ^ 0x6a09e667f3bcc909ull);
    uint64_t seed_mn = mix64(master_seed ^ 0xbb67ae8584caa73bull);
    EstimateRecord pm = arm_probability({ArmPattern::A3_edge, 0, m}, samples, seed_m, 0.5, threads);
    EstimateRecord pmn =
        arm_probability({ArmPattern::A3_annulus, m, n}, samples, seed_mn, 0.5, threads);
    rec.pi3_m = pm.estimate;
    rec.pi3_mn = pmn.estimate;

    if (pn.estimate <= 0.0 || pm.estimate <= 0.0 || pmn.estimate <= 0.0) {
        rec.ratio = std::numeric_limits<double>::quiet_NaN();
        rec.ci_low = 0.0;
        rec.ci_high = std::numeric_limits<double>::infinity();
        return rec;
    }
    rec.ratio = pn.estimate / (pm.estimate * pmn.estimate);
    double nd = static_cast<double>(samples);
    // Delta method on log(ratio): var(log p-hat) ~ (1-p)/(N p) per stream.
    double var = (1.0 - pn.estimate) / (nd * pn.estimate) +
                 (1.0 - pm.estimate) / (nd * pm.estimate) +
                 (1.0 - pmn.estimate) / (nd * pmn.estimate);
    double half = 1.959963984540054 * std::sqrt(var);
    rec.ci_low = rec.ratio * std::exp(-half);
    rec.ci_high = rec.ratio * std::exp(half);
    return rec;
}

}  // namespace perc
