#pragma once

#include <cstdint>

namespace cruxkit {

// Counter-based randomness for edge percolation.
//
// Every random decision about an edge is a pure function of
// (seed, trial_id, stream, edge_index), so trials can run in any order (or in
// parallel) and resampling an edge always reproduces the same outcome.  The
// mixing function is the standard splitmix64 finalizer chain; see README.md
// ("Reproducible randomness") for the normative description.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline uint64_t edge_key(uint64_t seed, uint64_t trial_id, uint64_t stream,
                         uint64_t edge_index) {
  uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ trial_id);
  h = splitmix64(h ^ stream);
  h = splitmix64(h ^ edge_index);
  return h;
}

// Uniform double in [0,1) with 53 random bits.
inline double edge_uniform01(uint64_t seed, uint64_t trial_id, uint64_t stream,
                             uint64_t edge_index) {
  return static_cast<double>(edge_key(seed, trial_id, stream, edge_index) >> 11) *
         0x1.0p-53;
}

// Dedicated streams so that distinct uses of per-edge randomness never collide.
enum EdgeStream : uint64_t {
  kStreamKeep = 0,    // primary keep/drop decision at probability p
  kStreamThin = 1,    // second-round thinning for coupled splits
};

// Small sequential generator for seeded heuristics (separator sweeps,
// sampled verification).  Distinct from the per-edge counter streams.
class Splitmix {
 public:
  explicit Splitmix(uint64_t seed) : state_(seed) {}
  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // Uniform integer in [0, n).
  uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

}  // namespace cruxkit
