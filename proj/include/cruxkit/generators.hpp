#pragma once

#include <cstdint>
#include <utility>

#include "cruxkit/graph.hpp"

namespace cruxkit {

// m-dimensional hypercube; vertex id = bit pattern, edge = one-bit flip.
// Guard: 1 <= m <= 24.
Graph hypercube(int m);

// Hamming graph H(m, r): words of length m over {0..r-1}; vertices adjacent
// iff they differ in exactly one coordinate.  Vertex id = sum digit_i * r^i,
// so H(m,2) has exactly the hypercube's edge set.  Guard: r^m <= 2^24.
Graph hamming(int m, int r);

// Point-line incidence graph of the projective plane over F_q (q prime):
// 2(q^2+q+1) vertices (points first, then lines), (q+1)-regular, girth 6,
// hence C4-free.
Graph projective_incidence(int q);

Graph complete(int n);
Graph complete_bipartite(int a, int b);
Graph cycle_graph(int n);   // n >= 3
Graph path_graph(int n);    // n >= 1

struct PercolationConfig {
  double p = 0.5;
  uint64_t seed = 0;
  uint64_t trial_id = 0;
};

// True iff canonical edge `edge_index` of the host survives at probability p.
// Pure function of (seed, trial_id, edge_index); see rng.hpp.
bool edge_present(const PercolationConfig& cfg, std::size_t edge_index);

// Keeps each edge independently with probability p.  Deterministic in cfg.
Graph sample_subgraph(const Graph& g, const PercolationConfig& cfg);

// Coupled pair (G_{p'}, G_p) with p' = (1-theta)*p: the sparser graph is
// obtained from the denser by deleting each surviving edge with probability
// theta, so first ⊆ second holds by construction.
std::pair<Graph, Graph> two_round_split(const Graph& g, const PercolationConfig& cfg,
                                        double theta);

}  // namespace cruxkit
