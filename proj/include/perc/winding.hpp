#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "perc/geometry.hpp"

namespace perc {

// Integer points in doubled coordinates, so primal vertices (even/even)
// and dual vertices (odd/odd) live on one grid and all winding tests are
// exact integer arithmetic.
using DoubledPoint = std::pair<int64_t, int64_t>;

inline DoubledPoint doubled(Vertex v) { return {2 * int64_t{v.x}, 2 * int64_t{v.y}}; }
inline DoubledPoint doubled(DualVertex d) {
    return {2 * int64_t{d.x} + 1, 2 * int64_t{d.y} + 1};
}

// Winding number of a closed polygonal curve around a point not on the
// curve, by signed ray casting in direction (2,1). The unimodular map
// (x,y) -> (x-y, 2y-x) sends that direction to (1,0), after which the
// half-open crossing rule (y1 <= py < y2 upward, y2 <= py < y1 downward)
// handles vertices landing on the ray exactly; everything stays integer.
// Throws std::domain_error if the point lies on the curve.
inline int winding_number(const std::vector<DoubledPoint>& curve, DoubledPoint point) {
    const size_t m = curve.size();
    auto tx = [](DoubledPoint q) -> DoubledPoint {
        return {q.first - q.second, 2 * q.second - q.first};
    };
    const auto [px, py] = tx(point);
    int w = 0;
    for (size_t i = 0; i < m; ++i) {
        const auto [x1, y1] = tx(curve[i]);
        const auto [x2, y2] = tx(curve[(i + 1) % m]);
        // point-on-segment check (on the original curve, transform is 1:1)
        const int64_t cr = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1);
        if (cr == 0 && std::min(x1, x2) <= px && px <= std::max(x1, x2) &&
            std::min(y1, y2) <= py && py <= std::max(y1, y2))
            throw std::domain_error("winding_number: point lies on the curve");
        const int64_t t = (x1 - px) * (y2 - y1) + (x2 - x1) * (py - y1);
        if (y1 <= py && py < y2 && t > 0) ++w;
        else if (y2 <= py && py < y1 && t < 0) --w;
    }
    return w;
}

inline int winding_number(const std::vector<Vertex>& circuit, Vertex point = {0, 0}) {
    std::vector<DoubledPoint> curve;
    curve.reserve(circuit.size());
    for (Vertex v : circuit) curve.push_back(doubled(v));
    return winding_number(curve, doubled(point));
}

inline int winding_number(const std::vector<DualVertex>& circuit, Vertex point = {0, 0}) {
    std::vector<DoubledPoint> curve;
    curve.reserve(circuit.size());
    for (DualVertex d : circuit) curve.push_back(doubled(d));
    return winding_number(curve, doubled(point));
}

// A self-avoiding circuit surrounds a point iff it winds around it once
// in either direction.
template <typename P>
inline bool surrounds(const std::vector<P>& circuit, Vertex point = {0, 0}) {
    int w = winding_number(circuit, point);
    return w == 1 || w == -1;
}

}  // namespace perc
