#include "cruxkit/generators.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "cruxkit/rng.hpp"

namespace cruxkit {

Graph hypercube(int m) {
  if (m < 1 || m > 24)
    throw std::invalid_argument("hypercube: require 1 <= m <= 24, got " + std::to_string(m));
  int n = 1 << m;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m) << (m - 1));
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < m; ++j) {
      int w = v ^ (1 << j);
      if (v < w) edges.push_back({v, w});
    }
  return Graph::from_edges(n, std::move(edges));
}

Graph hamming(int m, int r) {
  if (m < 1 || r < 2) throw std::invalid_argument("hamming: require m >= 1 and r >= 2");
  long long n = 1;
  for (int i = 0; i < m; ++i) {
    n *= r;
    if (n > (1LL << 24))
      throw std::invalid_argument("hamming: r^m exceeds 2^24 vertex guard");
  }
  // Precompute digit place values.
  std::vector<long long> place(m);
  place[0] = 1;
  for (int i = 1; i < m; ++i) place[i] = place[i - 1] * r;
  std::vector<Edge> edges;
  for (long long v = 0; v < n; ++v) {
    long long rest = v;
    for (int i = 0; i < m; ++i) {
      int digit = static_cast<int>(rest % r);
      rest /= r;
      // Connect to all larger digits in coordinate i; smaller ones were
      // handled from the other endpoint.
      for (int d = digit + 1; d < r; ++d) {
        long long w = v + static_cast<long long>(d - digit) * place[i];
        edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(w)});
      }
    }
  }
  return Graph::from_edges(static_cast<int>(n), std::move(edges));
}

namespace {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

}  // namespace

Graph projective_incidence(int q) {
  if (!is_prime(q))
    throw std::invalid_argument("projective_incidence: q must be prime, got " +
                                std::to_string(q));
  // Canonical representatives of 1-dim subspaces of F_q^3: first nonzero
  // coordinate equals 1.  Same list serves points and lines (duality).
  std::vector<std::array<int, 3>> reps;
  for (int y = 0; y < q; ++y)
    for (int z = 0; z < q; ++z) reps.push_back({1, y, z});
  for (int z = 0; z < q; ++z) reps.push_back({0, 1, z});
  reps.push_back({0, 0, 1});
  int N = static_cast<int>(reps.size());  // q^2 + q + 1
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(N) * (q + 1));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      long long dot = 0;
      for (int k = 0; k < 3; ++k) dot += static_cast<long long>(reps[i][k]) * reps[j][k];
      if (dot % q == 0) edges.push_back({i, N + j});  // point i on line j
    }
  return Graph::from_edges(2 * N, std::move(edges));
}

Graph complete(int n) {
  if (n < 1) throw std::invalid_argument("complete: require n >= 1");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph::from_edges(n, std::move(edges));
}

Graph complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("complete_bipartite: require a,b >= 1");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(a) * b);
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) edges.push_back({u, a + v});
  return Graph::from_edges(a + b, std::move(edges));
}

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: require n >= 3");
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  edges.push_back({0, n - 1});
  return Graph::from_edges(n, std::move(edges));
}

Graph path_graph(int n) {
  if (n < 1) throw std::invalid_argument("path_graph: require n >= 1");
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph::from_edges(n, std::move(edges));
}

bool edge_present(const PercolationConfig& cfg, std::size_t edge_index) {
  if (cfg.p < 0.0 || cfg.p > 1.0)
    throw std::invalid_argument("edge_present: p must lie in [0,1]");
  return edge_uniform01(cfg.seed, cfg.trial_id, kStreamKeep, edge_index) < cfg.p;
}

Graph sample_subgraph(const Graph& g, const PercolationConfig& cfg) {
  std::vector<Edge> kept;
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edge_present(cfg, i)) kept.push_back(edges[i]);
  return Graph::from_edges(g.vertex_count(), std::move(kept));
}

std::pair<Graph, Graph> two_round_split(const Graph& g, const PercolationConfig& cfg,
                                        double theta) {
  if (theta < 0.0 || theta > 1.0)
    throw std::invalid_argument("two_round_split: theta must lie in [0,1]");
  std::vector<Edge> sparse, dense;
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!edge_present(cfg, i)) continue;
    dense.push_back(edges[i]);
    // Thin the kept edge with probability theta using an independent stream.
    if (edge_uniform01(cfg.seed, cfg.trial_id, kStreamThin, i) >= theta)
      sparse.push_back(edges[i]);
  }
  return {Graph::from_edges(g.vertex_count(), std::move(sparse)),
          Graph::from_edges(g.vertex_count(), std::move(dense))};
}

}  // namespace cruxkit
