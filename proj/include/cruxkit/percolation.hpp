#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cruxkit/cycles.hpp"
#include "cruxkit/generators.hpp"
#include "cruxkit/graph.hpp"
#include "cruxkit/separators.hpp"

namespace cruxkit {

// Randomized DFS over a host graph that reveals each candidate edge's
// percolation outcome only when the walk needs it.  Edges never probed form
// Q; each of them joins an ancestor-descendant pair of the forest.
struct RevealedDfs {
  DfsForest forest;                             // forest of the percolated graph
  std::vector<std::pair<Edge, bool>> revealed;  // probes in order, with outcomes
  std::vector<Edge> unrevealed_q;               // Q: host edges never probed
  int k = 0;                                    // host minimum degree
  double epsilon_diag = 0;                      // ε used by the latest diagnostics
};

// At each stack vertex the host edges toward unvisited vertices are probed in
// ascending neighbour order until one is present (becoming a tree edge) or
// the list is exhausted.  Outcomes come from the same per-edge randomness as
// sample_subgraph, so revealing Q afterwards reproduces the plain sample.
RevealedDfs dfs_with_unrevealed(const Graph& host, const PercolationConfig& cfg);

struct VertexDiagnostics {
  bool full = false;   // at least (1-ε)k incident edges in Q
  bool poor = false;   // at most εk² forest descendants (self included)
  bool rich = false;   // negation of poor
  bool light = false;  // at most (1-9ε)k² descendants within distance (1-10ε)k²
};

struct DiagnosticsReport {
  double eps = 0;
  int k = 0;
  std::vector<VertexDiagnostics> per_vertex;
  long long full_count = 0, poor_count = 0, light_count = 0;
  double full_fraction = 0, poor_fraction = 0, light_fraction = 0;
};

DiagnosticsReport classify_vertices(const RevealedDfs& r, double eps);

// Diagnostic counter: unrevealed chords whose endpoints sit at tree distance
// at least (1-20ε)k².
long long count_long_unrevealed_chords(const RevealedDfs& r, double eps);

struct ExpansionCheck {
  long long measured = 0;  // |N_Q(A)|
  double bound = 0;        // (1-5ε)k²
  bool vacuous = false;    // bound exceeds n and is unattainable at this scale
};

// Measures the unrevealed neighbourhood of a set A of ceil(C·k) full
// vertices against the (1-5ε)k² target.  Violations are findings for the
// caller to log, not errors; a malformed A is rejected.
ExpansionCheck claim41_expansion_check(const Graph& host, const RevealedDfs& r,
                                       const VertexSet& a, double eps, double C);

struct ComponentReport {
  std::vector<long long> sizes;  // descending
  long long largest = 0;
  double fraction = 0;  // largest / n
};

ComponentReport giant_component(const Graph& g);

// --------------------------------------------------------------------------
// Experiments
// --------------------------------------------------------------------------

struct HypercubeTrialRow {
  int trial_id = 0;
  long long c1 = 0;         // largest component of the sample
  long long h_size = 0;     // non-separable piece size (0 when fully separable)
  long long cycle_len = 0;  // rotation-search cycle on that piece (0 if none)
  double floor_bound = 0;   // n / (4 m^32), reported for transparency
  double wall_ms = 0;
};

struct HypercubeExperiment {
  int m = 0;
  double eps_theta = 0;  // p = (1 + eps_theta)/m
  double p = 0;
  int trials = 0;
  uint64_t seed = 0;
  double psi = 0;                      // separability scale (psi = m at desk scale)
  long long s_param = 0, t_param = 0;  // recursion parameters derived from psi
  std::vector<HypercubeTrialRow> rows;  // sorted by trial_id
};

// Per trial: sample Q^m at p, measure the giant, run the separator recursion
// at the psi = m schedule, and hunt a long cycle in any non-separable piece.
HypercubeExperiment hypercube_cycle_experiment(int m, double eps_theta, int trials,
                                               uint64_t seed, int threads = 1);

struct C4FreeTrialRow {
  int trial_id = 0;
  int q = 0;
  int k = 0;  // q + 1, host degree
  double c = 0;
  double p = 0;  // c / k
  long long splice_len = 0;
  long long posa_len = 0;
  long long best_len = 0;
  double ratio = 0;  // best_len / k²
  double wall_ms = 0;
};

struct LogLogFit {
  double c = 0;
  double slope = 0;      // least-squares slope of ln(median L) against ln k
  double intercept = 0;
  int points = 0;  // number of (q, median) pairs with a positive median
};

struct C4FreeExperiment {
  std::vector<int> qs;
  std::vector<double> cs;
  int trials = 0;
  uint64_t seed = 0;
  std::vector<C4FreeTrialRow> rows;  // sorted by (q, c, trial_id)
  std::vector<LogLogFit> fits;       // one per c
};

// Per trial on the point-line incidence host: percolate, run the revealing
// DFS, splice a cycle out of present unrevealed chords, run the rotation
// search on the sample, and keep the longer cycle.
C4FreeExperiment c4free_cycle_experiment(const std::vector<int>& qs,
                                         const std::vector<double>& cs, int trials,
                                         uint64_t seed, int threads = 1);

// Deterministic CSV bodies for the experiments.  The wall-clock column comes
// last so timing can be stripped for byte-level comparisons; everything else
// is a pure function of the inputs.
std::string to_csv(const HypercubeExperiment& e);
std::string to_csv(const C4FreeExperiment& e);

}  // namespace cruxkit
