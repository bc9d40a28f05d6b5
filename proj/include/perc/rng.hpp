#pragma once

#include <cstdint>

namespace perc {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Full-avalanche 64-bit mixer.
inline uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Counter-based generator: the value for a given counter triple is a pure
// function of its arguments, with no sequential state. Frozen; golden test
// vectors live in tests/data.
inline uint64_t counter_hash(uint64_t master_seed, uint64_t sample_id, uint64_t counter) {
    uint64_t h = mix64(master_seed);
    h = mix64(h ^ (sample_id + 0x632BE59BD9B4E019ull));
    h = mix64(h ^ (counter + 0x9E6C63D0876A9A62ull));
    return h;
}

// Threshold such that (hash < threshold) has probability p. p >= 1 is
// handled by callers (all-open).
inline uint64_t open_threshold(double p) {
    if (p <= 0.0) return 0;
    long double t = (long double)p * 18446744073709551616.0L;  // p * 2^64
    if (t >= 18446744073709551615.0L) return ~0ull;
    return (uint64_t)t;
}

// State of edge `index` in sample (master_seed, sample_id): open with
// probability p, independently across indices.
inline bool edge_open_bit(uint64_t master_seed, uint64_t sample_id, uint64_t index, double p) {
    if (p >= 1.0) return true;
    if (p <= 0.0) return false;
    return counter_hash(master_seed, sample_id, index) < open_threshold(p);
}

}  // namespace perc
