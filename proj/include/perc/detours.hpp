#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perc/config.hpp"
#include "perc/crossings.hpp"
#include "perc/paths.hpp"

namespace perc {

// An epsilon-shielded detour around a portion of the circuit gamma:
//  - P (detour): open self-avoiding path w_0 .. w_M whose interior
//    vertices lie in the annulus and in the exterior of gamma, leaving
//    gamma "upward" at both ends (in the rotated frame);
//  - Q (detoured arc): the sub-arc of gamma between w_0 and w_M such
//    that the circuit Q + P does not surround the origin;
//  - R (shield): a closed dual self-avoiding path over P joining the
//    prescribed dual points next to w_0 and w_M, with vertical first and
//    last edges (in the frame), whose composite curve with P encloses no
//    origin;
//  - #P <= epsilon * #Q.
struct ShieldedDetour {
    LatticePath detour;    // P
    LatticePath detoured;  // Q, oriented from w_0 to w_M
    LatticePath shield;    // R
    Edge seed_edge;        // an edge of Q this detour was reported for
    double epsilon = 0.0;
    int frame = 0;  // rotation image of the endpoint geometry, 0..3 (x90 deg)

    Vertex w0() const { return detour.vertices.front(); }
    Vertex wM() const { return detour.vertices.back(); }
};

struct DetourFamily {
    std::vector<ShieldedDetour> members;
    int64_t total_detour_length = 0;    // l(family) = sum #P
    int64_t total_detoured_length = 0;  // sum #Q
};

// All detours found by the restricted search (shortest admissible P per
// endpoint pair and frame), in the deterministic order
// (#P, lexicographic vertex sequence of P). Every returned detour
// satisfies the five conditions; the search may miss exotic detours
// whose P is not the shortest path between its endpoints.
std::vector<ShieldedDetour> find_all_shielded_detours(const Configuration& config,
                                                      const LatticeCircuit& gamma,
                                                      double epsilon);

// First detour (in the same order) whose detoured arc contains e, or
// absent. Throws std::domain_error if e is not on gamma.
std::optional<ShieldedDetour> find_shielded_detour(const Configuration& config,
                                                   const LatticeCircuit& gamma, const Edge& e,
                                                   double epsilon);

// Greedy selection in the deterministic order, skipping detours whose
// arc shares a vertex with an already selected arc. Inclusion-maximal.
DetourFamily select_maximal_family(const std::vector<ShieldedDetour>& ordered);

// The shortcut circuit: edges of gamma outside the selected arcs plus
// the selected detours. Throws std::domain_error if the family does not
// splice into a single self-avoiding circuit of gamma.
LatticeCircuit build_shortcut_circuit(const LatticeCircuit& gamma, const DetourFamily& family);

struct ValidationReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Runtime checks of the structural lemmas:
//  (a) detours chosen for distinct circuit edges are equal or share no
//      vertices;
//  (b) sigma is an open self-avoiding circuit in the annulus with
//      winding +-1 about the origin, no longer than gamma, and its
//      interior faces contain those of gamma;
//  (c) every found detour outside the family has its arc intersecting a
//      selected arc (inclusion-maximality);
//  (d) the interior vertices of each detoured arc lie inside the circuit
//      formed by P and the complementary arc of gamma.
ValidationReport validate_detour_lemmas(const Configuration& config, const LatticeCircuit& gamma,
                                        const std::vector<ShieldedDetour>& all_detours,
                                        const DetourFamily& family, const LatticeCircuit& sigma);

// One JSON line: {"seed_edge":..,"epsilon":..,"P_len":..,"Q_len":..,
// "shield_len":..,"endpoints":..}
std::string detour_json_line(const ShieldedDetour& detour);

}  // namespace perc
