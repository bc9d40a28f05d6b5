#pragma once

#include <optional>

#include "perc/config.hpp"
#include "perc/paths.hpp"

namespace perc {

// Closed self-avoiding walk (first vertex repeated at the end) with its
// enclosed face count and winding about the origin.
struct LatticeCircuit {
    LatticePath walk;
    int64_t interior_area = 0;
    int winding_about_origin = 0;

    int64_t length() const { return static_cast<int64_t>(walk.edges.size()); }
};

// Shoelace face count and winding for a closed primal vertex sequence
// (first == last).
int64_t enclosed_area(const std::vector<Vertex>& closed_walk);
LatticeCircuit make_circuit(LatticePath walk);

struct CrossingResult {
    bool exists = false;
    std::optional<LatticePath> path;
    int64_t length = 0;  // 0 when absent, by convention
};

struct CircuitResult {
    bool exists = false;
    std::optional<LatticeCircuit> circuit;
    int64_t length = 0;
};

enum class Extremal { Lowest, Topmost };

// True iff an open path joins the left and right sides of the box.
bool horizontal_crossing_exists(const Configuration& config);

// The unique lowest (resp. topmost) open left-right crossing. The edge
// set returned is exactly the set of open edges e that (a) lie on some
// self-avoiding open left-right crossing and (b) whose dual edge is
// joined to the bottom (resp. top) side by a closed dual path.
CrossingResult extremal_crossing(const Configuration& config, Extremal which);

// Minimum-edge-count open left-right crossing.
CrossingResult shortest_crossing(const Configuration& config);

// The open self-avoiding circuit in the annulus surrounding the origin
// with minimal interior, when one exists.
CircuitResult innermost_circuit(const Configuration& config);

// Minimum edge count over open circuits in the annulus surrounding the
// origin, found by BFS on the winding cover cut along {(x,0): x > n}.
CircuitResult shortest_enclosing_circuit(const Configuration& config);

// Maximum number of pairwise vertex-disjoint open left-right crossings.
int max_disjoint_crossings(const Configuration& config);

// Internal reuse: set of edges lying on some self-avoiding open
// left-right crossing (same biconnected component as the virtual
// left-right edge). Exposed for testing.
std::vector<char> crossing_edge_mask(const Configuration& config);

}  // namespace perc
