#include "perc/config.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace perc {

Configuration sample_config(const Region& region, double p, uint64_t master_seed,
                            uint64_t sample_id) {
    if (p < 0.0 || p > 1.0) throw std::domain_error("p must lie in [0,1]");
    int64_t m = region.edge_count();
    std::vector<uint64_t> bits((m + 63) / 64, 0);
    if (p >= 1.0) {
        for (auto& w : bits) w = ~0ull;
        int rem = (int)(m & 63);
        if (rem) bits.back() = (1ull << rem) - 1;
    } else if (p > 0.0) {
        uint64_t thr = open_threshold(p);
        for (int64_t i = 0; i < m; ++i)
            if (counter_hash(master_seed, sample_id, (uint64_t)i) < thr)
                bits[i >> 6] |= 1ull << (i & 63);
    }
    return Configuration(region, p, master_seed, sample_id, std::move(bits));
}

Configuration make_config(const Region& region, const std::vector<Edge>& open_edges) {
    int64_t m = region.edge_count();
    std::vector<uint64_t> bits((m + 63) / 64, 0);
    for (const Edge& e : open_edges) {
        int64_t i = region.edge_index(e);
        bits[i >> 6] |= 1ull << (i & 63);
    }
    return Configuration(region, 0.5, 0, 0, std::move(bits));
}

Configuration all_open(const Region& region) { return sample_config(region, 1.0, 0, 0); }
Configuration all_closed(const Region& region) { return sample_config(region, 0.0, 0, 0); }

Configuration config_from_mask(const Region& region, uint64_t mask) {
    int64_t m = region.edge_count();
    if (m > 64) throw std::domain_error("mask enumeration limited to 64 edges");
    std::vector<uint64_t> bits((m + 63) / 64, 0);
    bits[0] = mask & (m == 64 ? ~0ull : ((1ull << m) - 1));
    return Configuration(region, 0.5, 0, mask, std::move(bits));
}

Configuration reflect_vertically(const Configuration& c) {
    const Region& r = c.region();
    int64_t m = r.edge_count();
    std::vector<uint64_t> bits((m + 63) / 64, 0);
    for (int64_t i = 0; i < m; ++i) {
        if (!c.open(i)) continue;
        Edge e = r.edge_at(i);
        Edge mirrored(Vertex{e.a.x, -e.a.y}, Vertex{e.b.x, -e.b.y});
        int64_t j = r.edge_index(mirrored);
        bits[j >> 6] |= 1ull << (j & 63);
    }
    return Configuration(r, c.p(), c.master_seed(), c.sample_id(), std::move(bits));
}

void write_snapshot(std::ostream& os, const Configuration& c) {
    const Region& r = c.region();
    char pbuf[64];
    std::snprintf(pbuf, sizeof pbuf, "%.17g", c.p());
    os << "PERC1 " << (r.kind() == RegionKind::Box ? "box" : "annulus") << ' ' << r.n() << ' '
       << pbuf << ' ' << c.master_seed() << ' ' << c.sample_id() << '\n';
    int64_t m = r.edge_count();
    const auto& words = c.packed_bits();
    int64_t nbytes = (m + 7) / 8;
    for (int64_t b = 0; b < nbytes; ++b) {
        unsigned char byte = (unsigned char)((words[b >> 3] >> ((b & 7) * 8)) & 0xFF);
        os.put((char)byte);
    }
}

Configuration read_snapshot(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("snapshot: missing header");
    std::istringstream hdr(line);
    std::string magic, kind;
    int n;
    double p;
    uint64_t seed, sid;
    if (!(hdr >> magic >> kind >> n >> p >> seed >> sid) || magic != "PERC1")
        throw std::runtime_error("snapshot: bad header");
    Region r(kind == "box" ? RegionKind::Box : RegionKind::Annulus, n);
    int64_t m = r.edge_count();
    std::vector<uint64_t> words((m + 63) / 64, 0);
    int64_t nbytes = (m + 7) / 8;
    for (int64_t b = 0; b < nbytes; ++b) {
        int ch = is.get();
        if (ch == EOF) throw std::runtime_error("snapshot: truncated payload");
        words[b >> 3] |= (uint64_t)(unsigned char)ch << ((b & 7) * 8);
    }
    return Configuration(r, p, seed, sid, std::move(words));
}

void write_snapshot_file(const std::string& path, const Configuration& c) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    write_snapshot(f, c);
}

Configuration read_snapshot_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_snapshot(f);
}

}  // namespace perc
