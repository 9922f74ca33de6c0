#include "cruxkit/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cruxkit {

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
  if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n)
      throw std::invalid_argument("Graph: edge (" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + ") out of range for n=" +
                                  std::to_string(n));
    if (e.u == e.v)
      throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(e.u));
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end())
    throw std::invalid_argument("Graph: duplicate edge (" + std::to_string(dup->u) +
                                "," + std::to_string(dup->v) + ")");
  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : g.edges_) { ++deg[e.u]; ++deg[e.v]; }
  g.offsets_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adj_.resize(2 * g.edges_.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : g.edges_) {
    g.adj_[cursor[e.u]++] = e.v;
    g.adj_[cursor[e.v]++] = e.u;
  }
  for (int v = 0; v < n; ++v)
    std::sort(g.adj_.begin() + g.offsets_[v], g.adj_.begin() + g.offsets_[v + 1]);
  return g;
}

int Graph::min_degree() const {
  if (n_ == 0) throw std::invalid_argument("min_degree: empty graph");
  int d = degree(0);
  for (int v = 1; v < n_; ++v) d = std::min(d, degree(v));
  return d;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  bounds(u);
  bounds(v);
  if (u == v) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::edge_index(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  Edge e{u, v};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || !(*it == e))
    throw std::invalid_argument("edge_index: edge (" + std::to_string(u) + "," +
                                std::to_string(v) + ") not present");
  return static_cast<std::size_t>(it - edges_.begin());
}

Rational Graph::average_degree() const {
  if (n_ == 0) throw std::invalid_argument("average_degree: empty graph");
  return Rational(2 * static_cast<long long>(edges_.size()), n_);
}

InducedSubgraphView::InducedSubgraphView(const Graph& base, VertexSet vertices)
    : base_(&base), vertices_(std::move(vertices)) {
  if (vertices_.universe() != base.vertex_count())
    throw std::invalid_argument("InducedSubgraphView: universe mismatch");
}

std::size_t InducedSubgraphView::edge_count() const {
  std::size_t twice = 0;
  for (Vertex v : vertices_.to_vector())
    for (Vertex w : base_->neighbors(v))
      if (vertices_.contains(w)) ++twice;
  return twice / 2;
}

int InducedSubgraphView::degree_within(Vertex v) const {
  if (!vertices_.contains(v))
    throw std::invalid_argument("degree_within: vertex not in view");
  int d = 0;
  for (Vertex w : base_->neighbors(v))
    if (vertices_.contains(w)) ++d;
  return d;
}

Rational InducedSubgraphView::average_degree() const {
  int k = vertices_.size();
  if (k == 0) throw std::invalid_argument("average_degree: empty induced subgraph");
  return Rational(2 * static_cast<long long>(edge_count()), k);
}

Graph InducedSubgraphView::materialize(std::vector<Vertex>* back_map) const {
  std::vector<Vertex> members = vertices_.to_vector();
  std::vector<Vertex> local(base_->vertex_count(), -1);
  for (size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (Vertex v : members)
    for (Vertex w : base_->neighbors(v))
      if (v < w && vertices_.contains(w))
        edges.push_back({local[v], local[w]});
  if (back_map) *back_map = members;
  return Graph::from_edges(static_cast<int>(members.size()), std::move(edges));
}

VertexSet external_neighbourhood(const Graph& g, const VertexSet& u) {
  if (u.universe() != g.vertex_count())
    throw std::invalid_argument("external_neighbourhood: universe mismatch");
  VertexSet out(g.vertex_count());
  for (Vertex v : u.to_vector())
    for (Vertex w : g.neighbors(v))
      if (!u.contains(w)) out.add(w);
  return out;
}

std::vector<Edge> edge_boundary(const Graph& g, const VertexSet& u) {
  if (u.universe() != g.vertex_count())
    throw std::invalid_argument("edge_boundary: universe mismatch");
  std::vector<Edge> out;
  for (const Edge& e : g.edges())
    if (u.contains(e.u) != u.contains(e.v)) out.push_back(e);
  return out;
}

namespace {

[[noreturn]] void parse_fail(int line_no, const std::string& why) {
  throw std::invalid_argument("edge list parse error at line " +
                              std::to_string(line_no) + ": " + why);
}

// Strips comments and whitespace; returns false for blank lines.
bool payload(const std::string& raw, std::string* out) {
  std::string s = raw;
  auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return false;
  size_t b = s.find_last_not_of(" \t\r\n");
  *out = s.substr(a, b - a + 1);
  return true;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string raw, line;
  int line_no = 0;
  long long n = -1, m = -1;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!payload(raw, &line)) continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> m) || n < 0 || m < 0) parse_fail(line_no, "expected header 'n m'");
      std::string extra;
      if (ls >> extra) parse_fail(line_no, "trailing tokens after header");
      continue;
    }
    long long u, v;
    if (!(ls >> u >> v)) parse_fail(line_no, "expected edge 'u v'");
    std::string extra;
    if (ls >> extra) parse_fail(line_no, "trailing tokens after edge");
    if (u < 0 || v < 0 || u >= n || v >= n)
      parse_fail(line_no, "endpoint out of range [0," + std::to_string(n - 1) + "]");
    if (u == v) parse_fail(line_no, "self-loop");
    if (u > v) parse_fail(line_no, "endpoints must satisfy u < v");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (n < 0) parse_fail(line_no == 0 ? 1 : line_no, "missing header 'n m'");
  if (static_cast<long long>(edges.size()) != m)
    parse_fail(line_no, "header promised " + std::to_string(m) + " edges, found " +
                            std::to_string(edges.size()));
  try {
    return Graph::from_edges(static_cast<int>(n), std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("edge list: ") + e.what());
  }
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open edge list file: " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string write_edge_list_string(const Graph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

}  // namespace cruxkit
