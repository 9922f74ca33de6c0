#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cruxkit/crux.hpp"
#include "cruxkit/expander.hpp"
#include "cruxkit/graph.hpp"

namespace cruxkit {

// ---------------------------------------------------------------------------
// Shared cycle plumbing
// ---------------------------------------------------------------------------

enum class CycleMethod {
  greedy_min_degree,
  posa_rotation,
  pipeline,
  dfs_stack,
  chord_splice,
};

std::string to_string(CycleMethod m);

struct CycleResult {
  std::vector<Vertex> vertices;  // in cycle order; closing edge implied
  CycleMethod method = CycleMethod::greedy_min_degree;
  std::optional<double> bound_claimed;  // guarantee attached to this result, if any
  int length() const { return static_cast<int>(vertices.size()); }
};

// Distinct vertices, consecutive pairs adjacent, closing edge present,
// length >= 3.  Every search routine validates through this single checker.
bool is_valid_cycle(const Graph& g, const std::vector<Vertex>& cycle);

struct CycleSearchResult {
  std::optional<CycleResult> cycle;
  bool hypothesis_met = false;  // meaning depends on the method
  bool meets_target = false;    // posa/pipeline: length >= target_t + 1
  std::string note;
};

// ---------------------------------------------------------------------------
// DFS forests (shared with the percolation module)
// ---------------------------------------------------------------------------

struct DfsForest {
  std::vector<int> parent;      // -1 at roots
  std::vector<int> depth;       // 0 at roots
  std::vector<int> order;       // discovery order; order[v] = timestamp
  std::vector<Vertex> roots;

  bool is_ancestor(Vertex anc, Vertex desc) const;  // reflexive
  int tree_distance(Vertex anc, Vertex desc) const; // depth difference; -1 if unrelated

  // Euler intervals for O(1) ancestor tests; built lazily by builders.
  std::vector<int> tin, tout;
};

// Plain DFS over the full graph, lowest-id children first.
DfsForest dfs_forest(const Graph& g);
void build_euler_intervals(DfsForest& f, const Graph& g);

// ---------------------------------------------------------------------------
// Cycle-finding algorithms
// ---------------------------------------------------------------------------

// Peels vertices of degree < d(G)/2 (exact arithmetic) to reach H with
// min-degree >= d(G)/2, then extends a maximal path greedily and closes it at
// the endpoint's earliest neighbour on the path.  When the peeled graph has
// min-degree >= 2 the returned cycle has length >= min-degree(H) + 1
// (recorded in bound_claimed).  Acyclic inputs yield a no-cycle report.
CycleSearchResult greedy_min_degree_cycle(const Graph& g);

// Rotation-extension search.  Reduces to the 2-core (cycles are unaffected
// and rotations need min-degree 2 to move), maintains a path, extends it
// whenever possible, uses rotations to expose new endpoints, closes into
// cycles and reopens them through outside vertices.  Choices are randomized
// but fully determined by the seed.  Never returns an invalid cycle;
// meets_target records length >= target_t + 1.
struct PosaOptions {
  int restarts = -1;       // default: 2-core vertex count
  long long step_budget = -1;  // rotation steps per restart; default adaptive
  bool stop_at_target = false;  // early exit once the target is met
  uint64_t seed = 0x705ACAFEu;  // drives start order and tie-breaking
};
CycleSearchResult posa_rotation_cycle(const Graph& g, int target_t,
                                      const PosaOptions& opts = {});

// Exhaustively checks |N(W)| >= t for every W with k/2 <= |W| <= k
// (the expansion hypothesis under which a cycle of length >= t+1 exists).
// Guard: n <= 26.
bool check_posa_hypothesis(const Graph& g, int k, double t);

// End-to-end pipeline: crux estimate -> dense expander subgraph at
// (epsilon, n_c/2) -> rotation search with target ceil((epsilon/32) * n_c).
struct BoundReport {
  double crux_bound = 0;        // (1-alpha)/16000 * c_alpha
  double expander_bound_a = 0;  // (epsilon/32) * c_alpha
  double expander_bound_b = 0;  // epsilon * n / (1200 ln^2 n)
  int posa_t = 0;               // target handed to the rotation search
  double host_ratio = 0;        // |H| / c_alpha
  long long crux_estimate = 0;  // c_alpha value used (exact for n <= 24)
};

struct PipelineResult {
  CycleSearchResult search;
  BoundReport bounds;
  ExpanderReport expander;
};

struct PipelineOptions {
  double epsilon = -1;  // default (1-alpha)/500
  double C = 40;
  uint64_t seed = 0x5EEDED;
};

PipelineResult cycle_via_crux_pipeline(const Graph& g, const Rational& alpha,
                                       const PipelineOptions& opts = {});

// Long-cycle search through depth-first stack geometry.  Case (a): if some
// DFS stack path reaches max(3, floor(n/100), s+2) vertices (s = middle
// segment size below), cut out the middle s vertices P' and reconnect the two
// halves around them through G - P'.  Case (b): otherwise snapshot the stack
// from the moment a third of the graph is explored, locate the deepest common
// prefix P of the snapshots, and reconnect the majority side's endpoints to
// the lower part of P while avoiding the top segment P'.  The middle-segment
// size is s = max(1, floor(epsilon*n / (1200 ln^2 n))), which is also the
// guaranteed cycle length when the hypotheses hold (n >= 150 t,
// epsilon <= 1/500, host is an (epsilon,t)-expander).
struct DfsStackOptions {
  bool assume_expander = false;  // treat the host as a verified expander
};
CycleSearchResult dfs_stack_cycle(const Graph& g, double epsilon, double t,
                                  const DfsStackOptions& opts = {});

// Chord splicing along vertical (root-to-leaf) paths of a DFS forest.
// Chords must join ancestor-descendant pairs.  On each vertical path the
// spliced cycle uses a chain of overlapping chords c_0..c_C (ordered by
// ascending upper endpoint) whose interleaving alternates path sections and
// chords; an exact dynamic program picks the chain of maximum total length.
// Returns the longest spliced cycle across the processed vertical paths.
struct ChordSpliceOptions {
  int max_leaves = 0;  // 0 = all leaves; otherwise the deepest `max_leaves`
};
CycleSearchResult chord_splice_cycle(const DfsForest& forest,
                                     const std::vector<Edge>& chords, const Graph& g,
                                     const ChordSpliceOptions& opts = {});

}  // namespace cruxkit
