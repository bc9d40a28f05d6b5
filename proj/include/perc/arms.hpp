#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "perc/config.hpp"
#include "perc/geometry.hpp"
#include "perc/paths.hpp"
#include "perc/stats.hpp"

namespace perc {

enum class ArmPattern { A3_edge, A3_annulus, A5_point, A3_halfplane, A6_annulus };

// Arm-event menu. Geometry: inner radius m, outer radius n. For the
// single-radius patterns (A3_edge, A5_point, A3_halfplane) the event
// radius is max(m, n); radius 0 is the vacuous event (always true).
struct ArmSpec {
    ArmPattern pattern = ArmPattern::A3_edge;
    int m = 0;
    int n = 0;
    int defect_budget = 0;  // only meaningful for A6_annulus

    int radius() const { return m > n ? m : n; }
};

// Three-arm event at the edge {0, e1}: the edge is open, its endpoints
// (contracted) have two vertex-disjoint open paths to the boundary of
// the box of radius r, and a closed dual path runs from the dual vertex
// below the edge to the dual ring just outside that box. All arms are
// confined to the box, which loses no generality. r = 0 is vacuous.
bool three_arm_origin(const Configuration& config, int r);

// Same event in the box of radius m centered on the edge midpoint; the
// closed dual arm may start from either endpoint of the dual edge.
// Throws std::domain_error when the centered box leaves the region.
bool three_arm_at_edge(const Configuration& config, const Edge& e, int m);

// Annulus version: two vertex-disjoint open paths joining the boundary
// of B(m) to that of B(n) together with a closed dual crossing of the
// same annulus. Requires 1 <= m <= n; m == n is vacuous (true).
bool three_arm_annulus(const Configuration& config, int m, int n);

// Half-plane variant of three_arm_origin: both open arms and the closed
// dual arm are confined to the upper half-plane.
bool three_arm_halfplane(const Configuration& config, int r);

// Five arms with color sequence (open, open, closed, open, closed) from
// w to the boundary of the origin-centered box of radius r, each arm
// starting on its prescribed incident primal/dual edge.
bool five_arm_at_vertex(const Configuration& config, Vertex w, int r);

inline bool five_arm_origin(const Configuration& config, int r) {
    return five_arm_at_vertex(config, {0, 0}, r);
}

// Six crossings of the annulus B(n) \ B(m): three vertex-disjoint open
// paths and three disjoint closed dual paths, one of which may contain
// up to defect_budget open edges.
bool six_arm_annulus(const Configuration& config, int m, int n, int defect_budget);

bool arm_event_occurs(const Configuration& config, const ArmSpec& spec);

// Minimal origin-centered box on which the event is measurable.
Region arm_enclosing_region(const ArmSpec& spec);

// Closed axis-aligned vertex rectangle used to delimit searches.
struct VertexRect {
    int xmin = 0, xmax = -1, ymin = 0, ymax = -1;
    bool contains(Vertex v) const {
        return v.x >= xmin && v.x <= xmax && v.y >= ymin && v.y <= ymax;
    }
};

// Landing zones for the five arms, in arm order: closed, open, open,
// closed, open (gamma_1 .. gamma_5).
struct FiveArmZones {
    DualTarget closed1;
    std::function<bool(Vertex)> open2;
    std::function<bool(Vertex)> open3;
    DualTarget closed4;
    std::function<bool(Vertex)> open5;
};

// Lexicographically least w in search_box whose five arms land in their
// prescribed zones, or absent. The detector demands one disjoint arm per
// zone with the arm-to-zone pairing verified on flow witnesses, so a
// reported point always satisfies the definition; exotic configurations
// where only a different routing works may be missed.
std::optional<Vertex> five_arm_point_search(const Configuration& config,
                                            const VertexRect& search_box,
                                            const FiveArmZones& zones);

// Monte Carlo frequency of the event over independent configurations on
// the minimal enclosing box, with Wilson 95% interval. Deterministic for
// a given seed, independently of the thread count.
EstimateRecord arm_probability(const ArmSpec& spec, int64_t samples, uint64_t master_seed,
                               double p = 0.5, int threads = 1);

struct RatioRecord {
    int m = 0;
    int n = 0;
    int64_t samples = 0;
    double pi3_n = 0.0;
    double pi3_m = 0.0;
    double pi3_mn = 0.0;
    double ratio = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    uint64_t master_seed = 0;
};

// Plug-in ratio pi3(n) / (pi3(m) * pi3(m,n)) from three independent
// sample streams, with a 95% delta-method interval on the log scale.
// m == n returns ratio exactly 1 by the convention pi3(n,n) = 1.
RatioRecord quasimultiplicativity_check(int m, int n, int64_t samples, uint64_t master_seed,
                                        int threads = 1);

}  // namespace perc
