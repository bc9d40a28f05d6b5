#pragma once

#include <climits>
#include <functional>
#include <optional>
#include <vector>

#include "perc/config.hpp"
#include "perc/geometry.hpp"

namespace perc {

enum class LatticeKind { Primal, Dual };

// Ordered vertex-edge walk on the primal or dual lattice. `edges` holds
// canonical primal edge indices; for dual paths these are the primal
// partners of the dual edges traversed.
struct LatticePath {
    LatticeKind lattice = LatticeKind::Primal;
    std::vector<Vertex> vertices;
    std::vector<DualVertex> dual_vertices;
    std::vector<int64_t> edges;

    size_t length() const { return edges.size(); }
    bool self_avoiding() const;
};

// Deterministic neighbor order used by every BFS in the project.
inline constexpr Vertex kDirections[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};  // E, N, W, S

// Vertex -> cluster id; two vertices share an id iff joined by open edges.
// The id of a cluster is the minimal canonical vertex index it contains.
std::vector<int64_t> open_clusters(const Configuration& config);

// Shortest open path between vertex sets. Ties broken by BFS in E,N,W,S
// order with lexicographic preference among equal-distance predecessors.
// `allowed` (optional, indexed by canonical vertex index) restricts the
// usable vertices; `max_len` prunes the search.
std::optional<LatticePath> shortest_open_path(const Configuration& config,
                                              const std::vector<Vertex>& sources,
                                              const std::vector<Vertex>& targets,
                                              const std::vector<char>* allowed = nullptr,
                                              int64_t max_len = -1);

enum class DisjointMode { VertexDisjoint, EdgeDisjoint };

struct DisjointPaths {
    int count = 0;
    std::vector<LatticePath> witnesses;
};

struct MengerOptions {
    DisjointMode mode = DisjointMode::VertexDisjoint;
    int max_paths = INT_MAX;
    int64_t excluded_edge = -1;               // canonical index, or -1
    const std::vector<char>* allowed = nullptr;  // vertex mask, or null
    // Treat the sources as a single contracted vertex: paths may share a
    // start vertex and may not re-enter any source.
    bool contracted_sources = false;
    bool want_witnesses = true;
    // Optional capacity-1 target groups (indexed by vertex): when given,
    // at most one path may end in each group. Entries < 0 are non-targets.
    const std::vector<int32_t>* target_group = nullptr;
    int group_count = 0;
};

// Maximum number of pairwise disjoint open paths from sources to targets
// (Menger), by unit-capacity augmenting paths.
DisjointPaths max_disjoint_open_paths(const Configuration& config,
                                      const std::vector<Vertex>& sources,
                                      const std::vector<Vertex>& targets,
                                      const MengerOptions& opt = {});

// Same machinery on the dual lattice over closed dual edges. Targets are
// a mask over DualGrid indices; options follow MengerOptions semantics
// with masks/groups indexed by DualGrid.
DisjointPaths max_disjoint_closed_dual_paths(const Configuration& config,
                                             const std::vector<DualVertex>& sources,
                                             const std::vector<char>& target_mask,
                                             const MengerOptions& opt = {});

// --- dual lattice -----------------------------------------------------

using DualTarget = std::function<bool(DualVertex)>;

// Touching convention: a dual path touches a boundary side if its final
// dual vertex is within L-inf distance 1/2 of the side on the outward
// side of the region.
DualTarget dual_target_side(const Region& region, Side side);
// Dual vertices d with d + (1/2,1/2) in \partial B(k)^*, i.e. integer dual
// coordinates of max-norm k.
DualTarget dual_target_radius(int k);

// Shortest path over closed dual edges from the endpoints of `source` to
// the target, or absent. The source dual edge itself is not traversed.
// `allowed` (by DualGrid index) optionally restricts usable dual vertices.
std::optional<LatticePath> closed_dual_path(const Configuration& config, const DualEdge& source,
                                            const DualTarget& target,
                                            const std::vector<char>* allowed = nullptr);

// Membership mask (indexed by DualGrid) of all dual vertices reachable
// from the seeds via closed dual edges of the region.
std::vector<char> dual_closed_cluster(const Configuration& config,
                                      const std::vector<DualVertex>& seeds,
                                      const std::vector<char>* allowed = nullptr);

}  // namespace perc
