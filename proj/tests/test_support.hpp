#pragma once

// Shared fixtures for the test suite: deterministic random graphs (keyed by
// the same per-edge hash the library uses), a few named hosts, and brute
// helpers small enough to read at a glance.

#include <vector>

#include "cruxkit/graph.hpp"
#include "cruxkit/rng.hpp"

namespace testsupport {

inline cruxkit::Graph random_graph(int n, double p, uint64_t key) {
  std::vector<cruxkit::Edge> edges;
  int idx = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++idx)
      if (cruxkit::edge_uniform01(key, 0, 0, idx) < p) edges.push_back({u, v});
  return cruxkit::Graph::from_edges(n, std::move(edges));
}

inline cruxkit::Graph petersen() {
  return cruxkit::Graph::from_edges(
      10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
           {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5},
           {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}});
}

inline cruxkit::Graph disjoint_union(const cruxkit::Graph& a, const cruxkit::Graph& b) {
  std::vector<cruxkit::Edge> edges(a.edges());
  int off = a.vertex_count();
  for (const auto& e : b.edges()) edges.push_back({e.u + off, e.v + off});
  return cruxkit::Graph::from_edges(off + b.vertex_count(), std::move(edges));
}

// Component sizes via union-find, for soundness checks that must not depend
// on the library's own component scan.
inline std::vector<int> component_sizes(const cruxkit::Graph& g,
                                        const cruxkit::VertexSet& removed) {
  int n = g.vertex_count();
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  std::vector<int>* pp = &parent;
  auto find = [pp](int v) {
    while ((*pp)[v] != v) v = (*pp)[v] = (*pp)[(*pp)[v]];
    return v;
  };
  for (const auto& e : g.edges()) {
    if (removed.contains(e.u) || removed.contains(e.v)) continue;
    parent[find(e.u)] = find(e.v);
  }
  std::vector<int> count(n, 0);
  for (int v = 0; v < n; ++v)
    if (!removed.contains(v)) ++count[find(v)];
  std::vector<int> sizes;
  for (int v = 0; v < n; ++v)
    if (count[v] > 0) sizes.push_back(count[v]);
  return sizes;
}

}  // namespace testsupport
