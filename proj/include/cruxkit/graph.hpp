#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cruxkit/rational.hpp"

namespace cruxkit {

using Vertex = int;

struct Edge {
  Vertex u = 0, v = 0;  // canonical: u < v
  friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }
  friend bool operator<(const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  }
};

// Set of vertices over a fixed universe {0, ..., universe-1}, stored as a
// bitset.  All set algebra stays within the universe.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  static VertexSet of(int universe, std::initializer_list<Vertex> vs) {
    VertexSet s(universe);
    for (Vertex v : vs) s.add(v);
    return s;
  }
  static VertexSet full(int universe) {
    VertexSet s(universe);
    for (int v = 0; v < universe; ++v) s.add(v);
    return s;
  }

  int universe() const { return universe_; }
  bool contains(Vertex v) const {
    return v >= 0 && v < universe_ && (words_[v >> 6] >> (v & 63)) & 1;
  }
  void add(Vertex v) { check(v); words_[v >> 6] |= (1ULL << (v & 63)); }
  void remove(Vertex v) { check(v); words_[v >> 6] &= ~(1ULL << (v & 63)); }
  int size() const {
    int c = 0;
    for (uint64_t w : words_) c += __builtin_popcountll(w);
    return c;
  }
  bool empty() const {
    for (uint64_t w : words_) if (w) return false;
    return true;
  }

  VertexSet& operator|=(const VertexSet& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  VertexSet complement() const {
    VertexSet r(universe_);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    int tail = universe_ & 63;
    if (tail && !r.words_.empty()) r.words_.back() &= (1ULL << tail) - 1;
    return r;
  }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

  std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    for (int base = 0; base < static_cast<int>(words_.size()); ++base) {
      uint64_t w = words_[base];
      while (w) {
        int b = __builtin_ctzll(w);
        out.push_back(base * 64 + b);
        w &= w - 1;
      }
    }
    return out;
  }

 private:
  void check(Vertex v) const {
    if (v < 0 || v >= universe_)
      throw std::out_of_range("VertexSet: vertex " + std::to_string(v) +
                              " outside universe of size " + std::to_string(universe_));
  }
  int universe_ = 0;
  std::vector<uint64_t> words_;
};

// Simple undirected graph on dense vertex ids 0..n-1.  Immutable after
// construction; adjacency lists are sorted; the edge list is sorted and
// canonical (u < v), which fixes the edge indexing used for percolation.
class Graph {
 public:
  Graph() = default;

  // Validates: ids in range, no loops, no duplicates.  Accepts endpoints in
  // either order and canonicalizes.
  static Graph from_edges(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    bounds(v);
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  int degree(Vertex v) const {
    bounds(v);
    return static_cast<int>(offsets_[v + 1] - offsets_[v]);
  }
  int min_degree() const;
  bool has_edge(Vertex u, Vertex v) const;
  // Index of canonical edge {u,v} in edges(); throws if absent.
  std::size_t edge_index(Vertex u, Vertex v) const;

  // 2e/n as an exact rational.  Error on the empty graph.
  Rational average_degree() const;

 private:
  void bounds(Vertex v) const {
    if (v < 0 || v >= n_)
      throw std::out_of_range("Graph: vertex " + std::to_string(v) + " out of range");
  }
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adj_;
};

// Lightweight view of the subgraph induced by `vertices`; no copying.
class InducedSubgraphView {
 public:
  InducedSubgraphView(const Graph& base, VertexSet vertices);

  const Graph& base() const { return *base_; }
  const VertexSet& vertices() const { return vertices_; }
  int vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const;
  int degree_within(Vertex v) const;
  Rational average_degree() const;

  // Relabeled copy on 0..k-1; back_map[i] = original id of new vertex i.
  Graph materialize(std::vector<Vertex>* back_map = nullptr) const;

 private:
  const Graph* base_;
  VertexSet vertices_;
};

// Vertices outside U with at least one neighbour in U.
VertexSet external_neighbourhood(const Graph& g, const VertexSet& u);
// Edges with exactly one endpoint in U.
std::vector<Edge> edge_boundary(const Graph& g, const VertexSet& u);

// Plain-text edge list:
//   first non-comment line:  n m
//   then m lines:            u v        (0 <= u < v < n)
// '#' starts a comment; blank lines ignored.  Parse errors report the
// 1-based line number.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
std::string write_edge_list_string(const Graph& g);

}  // namespace cruxkit
