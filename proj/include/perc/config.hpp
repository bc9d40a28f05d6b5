#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "perc/geometry.hpp"
#include "perc/rng.hpp"

namespace perc {

// Immutable sampled configuration: one bit per region edge in canonical
// index order (1 = open). Fully reproducible from
// (region, p, master_seed, sample_id).
class Configuration {
  public:
    Configuration(Region region, double p, uint64_t master_seed, uint64_t sample_id,
                  std::vector<uint64_t> packed_bits)
        : region_(std::move(region)),
          p_(p),
          master_seed_(master_seed),
          sample_id_(sample_id),
          bits_(std::make_shared<std::vector<uint64_t>>(std::move(packed_bits))) {}

    const Region& region() const { return region_; }
    double p() const { return p_; }
    uint64_t master_seed() const { return master_seed_; }
    uint64_t sample_id() const { return sample_id_; }

    bool open(int64_t edge_index) const {
        return ((*bits_)[edge_index >> 6] >> (edge_index & 63)) & 1ull;
    }
    bool open(const Edge& e) const { return open(region_.edge_index(e)); }
    bool closed(int64_t edge_index) const { return !open(edge_index); }

    const std::vector<uint64_t>& packed_bits() const { return *bits_; }

  private:
    Region region_;
    double p_;
    uint64_t master_seed_;
    uint64_t sample_id_;
    std::shared_ptr<const std::vector<uint64_t>> bits_;
};

Configuration sample_config(const Region& region, double p, uint64_t master_seed,
                            uint64_t sample_id);

// Configuration with an explicit open-edge set (tests, hand-built examples).
Configuration make_config(const Region& region, const std::vector<Edge>& open_edges);
Configuration all_open(const Region& region);
Configuration all_closed(const Region& region);
// Configuration from the low bits of `mask` (exhaustive enumeration).
Configuration config_from_mask(const Region& region, uint64_t mask);
// Vertical reflection y -> -y of the edge states.
Configuration reflect_vertically(const Configuration& c);

// Snapshot file: ASCII header line
//   PERC1 <box|annulus> <n> <p> <master_seed> <sample_id>
// followed by the edge bits packed in canonical order, little-endian within
// bytes, final byte zero-padded. Round-trips bit-exactly.
void write_snapshot(std::ostream& os, const Configuration& c);
Configuration read_snapshot(std::istream& is);
void write_snapshot_file(const std::string& path, const Configuration& c);
Configuration read_snapshot_file(const std::string& path);

}  // namespace perc
