#pragma once

#include <cstdint>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <vector>

namespace perc {

// Lattice coordinates are confined to |x| <= 3*2^20, so every index
// computation below fits comfortably in 64 bits.
constexpr int kMaxSideParameter = 1 << 20;

struct Vertex {
    int32_t x = 0;
    int32_t y = 0;

    friend bool operator==(const Vertex&, const Vertex&) = default;
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

inline Vertex operator+(Vertex a, Vertex b) { return {a.x + b.x, a.y + b.y}; }
inline Vertex operator-(Vertex a, Vertex b) { return {a.x - b.x, a.y - b.y}; }

// A dual vertex (x, y) stands for the plane point (x + 1/2, y + 1/2).
struct DualVertex {
    int32_t x = 0;
    int32_t y = 0;

    friend bool operator==(const DualVertex&, const DualVertex&) = default;
    friend auto operator<=>(const DualVertex&, const DualVertex&) = default;
};

enum class Orientation { Horizontal, Vertical };

// Undirected nearest-neighbor edge, normalized so endpoint_a is the
// lexicographically smaller endpoint (by x, then y).
struct Edge {
    Vertex a;
    Vertex b;

    Edge() = default;
    Edge(Vertex u, Vertex v) {
        if ((v.x < u.x) || (v.x == u.x && v.y < u.y)) std::swap(u, v);
        a = u;
        b = v;
        if (std::abs(a.x - b.x) + std::abs(a.y - b.y) != 1)
            throw std::invalid_argument("edge endpoints are not adjacent");
    }

    Orientation orientation() const {
        return a.x != b.x ? Orientation::Horizontal : Orientation::Vertical;
    }

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Dual edge sharing its midpoint with `primal`.
struct DualEdge {
    DualVertex a;
    DualVertex b;
    Edge primal;

    friend bool operator==(const DualEdge&, const DualEdge&) = default;
};

// dual_of and primal_of are mutually inverse.
inline DualEdge dual_of(const Edge& e) {
    if (e.orientation() == Orientation::Horizontal) {
        // {(x,y),(x+1,y)} -> {(x+1/2,y-1/2),(x+1/2,y+1/2)}
        return DualEdge{{e.a.x, e.a.y - 1}, {e.a.x, e.a.y}, e};
    }
    // {(x,y),(x,y+1)} -> {(x-1/2,y+1/2),(x+1/2,y+1/2)}
    return DualEdge{{e.a.x - 1, e.a.y}, {e.a.x, e.a.y}, e};
}

inline Edge primal_of(const DualEdge& d) { return d.primal; }

inline Edge primal_of(DualVertex u, DualVertex v) {
    if (u.x == v.x && std::abs(u.y - v.y) == 1) {
        int32_t top = std::max(u.y, v.y);
        return Edge{{u.x, top}, {u.x + 1, top}};
    }
    if (u.y == v.y && std::abs(u.x - v.x) == 1) {
        int32_t right = std::max(u.x, v.x);
        return Edge{{right, u.y}, {right, u.y + 1}};
    }
    throw std::invalid_argument("dual vertices are not adjacent");
}

enum class Side { Left, Right, Top, Bottom };

enum class RegionKind { Box, Annulus };

// B(n) = {x : ||x||_inf <= n}; annulus(n) = B(3n) \ B(n).
// Canonical edge indexing: all horizontal edges first, sorted
// lexicographically by (x, y) of the left endpoint, then all vertical
// edges sorted by (x, y) of the bottom endpoint.
class Region {
  public:
    Region(RegionKind kind, int n) : kind_(kind), n_(n) {
        if (n < 1 || n > kMaxSideParameter)
            throw std::domain_error("region side parameter out of range");
        build_tables();
    }

    static Region box(int n) { return Region(RegionKind::Box, n); }
    static Region annulus(int n) { return Region(RegionKind::Annulus, n); }

    RegionKind kind() const { return kind_; }
    int n() const { return n_; }
    // L-inf radius of the outermost vertex.
    int outer() const { return kind_ == RegionKind::Box ? n_ : 3 * n_; }
    bool is_box() const { return kind_ == RegionKind::Box; }

    bool contains(Vertex v) const {
        int r = radius(v);
        if (r > outer()) return false;
        return kind_ == RegionKind::Box || r > n_;
    }

    bool contains(const Edge& e) const { return contains(e.a) && contains(e.b); }

    static int radius(Vertex v) { return std::max(std::abs(v.x), std::abs(v.y)); }

    int64_t vertex_count() const { return vertex_total_; }
    int64_t edge_count() const { return h_total_ + v_total_; }
    int64_t horizontal_edge_count() const { return h_total_; }

    // Bijection region vertices -> [0, vertex_count), lexicographic by (x, y).
    int64_t vertex_index(Vertex v) const {
        if (!contains(v)) throw std::domain_error("vertex outside region");
        return vert_pref_[v.x + outer()] + column_rank(!full_column(v.x), v.y);
    }

    Vertex vertex_at(int64_t idx) const {
        if (idx < 0 || idx >= vertex_total_) throw std::domain_error("vertex index out of range");
        int32_t x = locate(vert_pref_, idx);
        return {x, column_unrank(!full_column(x), idx - vert_pref_[x + outer()])};
    }

    int64_t edge_index(const Edge& e) const {
        if (!contains(e)) throw std::domain_error("edge outside region");
        int N = outer();
        if (e.orientation() == Orientation::Horizontal) {
            bool split = !(full_column(e.a.x) && full_column(e.a.x + 1));
            return h_pref_[e.a.x + N] + column_rank(split, e.a.y);
        }
        return h_total_ + v_pref_[e.a.x + N] + vcolumn_rank(!full_column(e.a.x), e.a.y);
    }

    Edge edge_at(int64_t idx) const {
        if (idx < 0 || idx >= edge_count()) throw std::domain_error("edge index out of range");
        int N = outer();
        if (idx < h_total_) {
            int32_t x = locate(h_pref_, idx);
            bool split = !(full_column(x) && full_column(x + 1));
            int32_t y = column_unrank(split, idx - h_pref_[x + N]);
            return Edge{{x, y}, {x + 1, y}};
        }
        idx -= h_total_;
        int32_t x = locate(v_pref_, idx);
        int32_t y = vcolumn_unrank(!full_column(x), idx - v_pref_[x + N]);
        return Edge{{x, y}, {x, y + 1}};
    }

    // Vertices of a box side, bottom-to-top / left-to-right order.
    std::vector<Vertex> side_vertices(Side s) const {
        if (kind_ != RegionKind::Box) throw std::domain_error("sides are defined for boxes");
        std::vector<Vertex> out;
        out.reserve(2 * n_ + 1);
        for (int t = -n_; t <= n_; ++t) switch (s) {
                case Side::Left: out.push_back({-n_, t}); break;
                case Side::Right: out.push_back({n_, t}); break;
                case Side::Bottom: out.push_back({t, -n_}); break;
                case Side::Top: out.push_back({t, n_}); break;
            }
        return out;
    }

    friend bool operator==(const Region& a, const Region& b) {
        return a.kind_ == b.kind_ && a.n_ == b.n_;
    }

  private:
    RegionKind kind_;
    int n_;
    int64_t h_total_ = 0, v_total_ = 0, vertex_total_ = 0;
    // Prefix sums over columns x = -N..N (one extra slot for totals).
    std::shared_ptr<const std::vector<int64_t>> h_pref_ptr_, v_pref_ptr_, vert_pref_ptr_;
    const int64_t* h_pref_ = nullptr;
    const int64_t* v_pref_ = nullptr;
    const int64_t* vert_pref_ = nullptr;

    bool full_column(int x) const {
        return kind_ == RegionKind::Box || std::abs(x) > n_;
    }

    // Number of region vertices in column x.
    int64_t vcount(int x) const {
        if (std::abs(x) > outer()) return 0;
        return full_column(x) ? int64_t{2} * outer() + 1 : int64_t{4} * n_;
    }
    // Horizontal edges with left endpoint in column x.
    int64_t hcount(int x) const {
        int N = outer();
        if (x < -N || x >= N) return 0;
        if (full_column(x) && full_column(x + 1)) return int64_t{2} * N + 1;
        return int64_t{4} * n_;
    }
    // Vertical edges with bottom endpoint in column x.
    int64_t vecount(int x) const {
        int N = outer();
        if (std::abs(x) > N) return 0;
        if (full_column(x)) return int64_t{2} * N;
        return int64_t{4} * n_ - 2;
    }

    // Rank of y among the admissible y values of a column: full columns
    // hold y = -N..N contiguously; split (annulus middle) columns hold
    // the negative block y = -N..-n-1 first, then y = n+1..N.
    int64_t column_rank(bool split, int y) const {
        int N = outer();
        if (!split || y < 0) return y + N;
        return (int64_t)(N - n_) + (y - n_ - 1);
    }
    int32_t column_unrank(bool split, int64_t r) const {
        int N = outer();
        if (!split || r < N - n_) return (int32_t)(r - N);
        return (int32_t)(n_ + 1 + (r - (N - n_)));
    }
    // Same for vertical-edge bottom endpoints (one fewer slot per block).
    int64_t vcolumn_rank(bool split, int y) const {
        int N = outer();
        if (!split || y < 0) return y + N;
        return (int64_t)(N - n_ - 1) + (y - n_ - 1);
    }
    int32_t vcolumn_unrank(bool split, int64_t r) const {
        int N = outer();
        if (!split || r < N - n_ - 1) return (int32_t)(r - N);
        return (int32_t)(n_ + 1 + (r - (N - n_ - 1)));
    }

    int32_t locate(const int64_t* pref, int64_t idx) const {
        // Largest x with pref[x+N] <= idx.
        int N = outer();
        int lo = 0, hi = 2 * N + 1;
        while (hi - lo > 1) {
            int mid = (lo + hi) / 2;
            if (pref[mid] <= idx)
                lo = mid;
            else
                hi = mid;
        }
        return (int32_t)(lo - N);
    }

    void build_tables() {
        int N = outer();
        auto hp = std::make_shared<std::vector<int64_t>>(2 * N + 2, 0);
        auto vp = std::make_shared<std::vector<int64_t>>(2 * N + 2, 0);
        auto tp = std::make_shared<std::vector<int64_t>>(2 * N + 2, 0);
        for (int x = -N; x <= N; ++x) {
            (*hp)[x + N + 1] = (*hp)[x + N] + hcount(x);
            (*vp)[x + N + 1] = (*vp)[x + N] + vecount(x);
            (*tp)[x + N + 1] = (*tp)[x + N] + vcount(x);
        }
        h_total_ = hp->back();
        v_total_ = vp->back();
        vertex_total_ = tp->back();
        h_pref_ptr_ = hp;
        v_pref_ptr_ = vp;
        vert_pref_ptr_ = tp;
        h_pref_ = hp->data();
        v_pref_ = vp->data();
        vert_pref_ = tp->data();
    }
};

// Column-split columns have no full-column flag for split edges; document:
// in a split column the negative block comes first, then the positive block.

// Grid of dual vertices used for BFS over closed dual edges: integer dual
// coordinates in [-N-1, N]^2 where N is the region's outer radius.
class DualGrid {
  public:
    explicit DualGrid(const Region& r) : N_(r.outer()) {}

    int64_t size() const {
        int64_t w = 2 * (int64_t)N_ + 2;
        return w * w;
    }
    bool contains(DualVertex d) const {
        return d.x >= -N_ - 1 && d.x <= N_ && d.y >= -N_ - 1 && d.y <= N_;
    }
    int64_t index(DualVertex d) const {
        int64_t w = 2 * (int64_t)N_ + 2;
        return (d.x + N_ + 1) * w + (d.y + N_ + 1);
    }
    DualVertex at(int64_t idx) const {
        int64_t w = 2 * (int64_t)N_ + 2;
        return {(int32_t)(idx / w - N_ - 1), (int32_t)(idx % w - N_ - 1)};
    }

  private:
    int N_;
};

}  // namespace perc
