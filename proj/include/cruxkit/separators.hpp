#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cruxkit/graph.hpp"

namespace cruxkit {

// Partition V = A ∪ B ∪ S with no A-B edges, |A|, |B| <= 2n/3, both sides
// nonempty.  S may be empty (disconnected graphs split for free).
struct BalancedSeparator {
  VertexSet s, a, b;
};

bool is_balanced_separator(const Graph& g, const BalancedSeparator& sep);

enum class SeparatorMode { automatic, exhaustive, heuristic };

struct SeparatorOptions {
  SeparatorMode mode = SeparatorMode::automatic;  // automatic: exact iff n <= 18
  uint64_t seed = 0x5EEDED;
  int sweep_roots = 32;  // BFS-layer sweep seeds in heuristic mode
};

// Smallest balanced separator with |S| <= budget.  Exact mode enumerates
// candidate sets by size ascending (ties: lexicographically first), so the
// returned separator is minimum.  Heuristic mode combines component splits,
// BFS-layer sweeps from seeded roots, and separator-shrinking local moves;
// it returns the best candidate within budget or nothing.
std::optional<BalancedSeparator> find_balanced_separator(
    const Graph& g, int budget, const SeparatorOptions& opts = {});

struct SeparatorNode {
  std::vector<Vertex> set;        // piece X (host ids, ascending)
  std::vector<Vertex> separator;  // S for internal nodes; empty for leaves
  bool leaf = false;
  int left = -1, right = -1;  // children indices into SeparatorDecomposition::nodes
};

struct SeparatorDecomposition {
  std::vector<SeparatorNode> nodes;  // nodes[0] is the root
  VertexSet aggregate;               // S*: union of every separator used
  int max_leaf = 0;                  // largest leaf piece
  int depth = 0;  // deepest level carrying a separator (root = 0); 0 if root is a leaf
};

struct NonSeparabilityEvidence {
  std::vector<Vertex> piece;  // host ids of the stuck piece H, |H| >= t
  int budget = 0;             // the failed budget floor(|H|/s)
  bool exhaustive = false;    // true when the failed search was exact
  std::string search_record;
};

struct SeparabilityVerdict {
  bool separable = false;
  int s_used = 0;
  int t_used = 0;
  std::optional<SeparatorDecomposition> decomposition;  // set when separable
  std::optional<NonSeparabilityEvidence> evidence;      // set when not
};

// Recursively splits every piece of size >= t using balanced separators with
// per-piece budget floor(|piece|/s).  On success the decomposition satisfies
// |S*| <= 4n²/(s·t) and depth <= log_{3/2}(n/t); a piece with no admissible
// separator is returned as evidence instead.
SeparabilityVerdict separability_decompose(const Graph& g, int s, int t,
                                           const SeparatorOptions& opts = {});

struct CorollaryParams {
  long long s = 0;                 // ceil(4·psi³)
  long long t = 0;                 // ceil(n/psi)
  double threshold_separator = 0;  // n/psi²
  double threshold_piece = 0;      // n/psi
};

// Parameter schedule mapping a separability scale psi >= 1 to the recursion
// inputs and the thresholds a non-separable piece certifies.
CorollaryParams separability_corollary_params(long long n, double psi);

}  // namespace cruxkit
