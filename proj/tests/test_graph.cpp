#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "cruxkit/generators.hpp"
#include "cruxkit/graph.hpp"

using cruxkit::Edge;
using cruxkit::Graph;
using cruxkit::Rational;
using cruxkit::Vertex;
using cruxkit::VertexSet;

TEST_CASE("vertex set basics") {
  VertexSet s(70);
  CHECK(s.universe() == 70);
  CHECK(s.empty());
  s.add(0);
  s.add(69);
  CHECK(s.size() == 2);
  CHECK(s.contains(0));
  CHECK(s.contains(69));
  CHECK_FALSE(s.contains(64));
  s.remove(0);
  CHECK(s.size() == 1);
  CHECK_THROWS_AS(s.add(70), std::out_of_range);
  CHECK_THROWS_AS(s.add(-1), std::out_of_range);
  CHECK_FALSE(s.contains(-1));
  CHECK_FALSE(s.contains(70));
}

TEST_CASE("vertex set algebra over the fixed universe") {
  VertexSet a = VertexSet::of(8, {0, 1, 2});
  VertexSet b = VertexSet::of(8, {2, 3});
  CHECK((a | b).to_vector() == std::vector<Vertex>{0, 1, 2, 3});
  CHECK((a & b).to_vector() == std::vector<Vertex>{2});
  CHECK((a - b).to_vector() == std::vector<Vertex>{0, 1});
  VertexSet c = a.complement();
  CHECK(c.size() == 5);
  CHECK_FALSE(c.contains(0));
  CHECK(c.contains(7));
  CHECK((a | a.complement()) == VertexSet::full(8));
  CHECK(VertexSet::full(8).size() == 8);
}

TEST_CASE("graph construction canonicalizes and validates") {
  Graph g = Graph::from_edges(4, {{2, 0}, {3, 1}, {0, 1}});
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.edges()[0] == Edge{0, 1});
  CHECK(g.edges()[1] == Edge{0, 2});
  CHECK(g.edges()[2] == Edge{1, 3});
  CHECK(g.has_edge(2, 0));
  CHECK_FALSE(g.has_edge(2, 3));
  CHECK(g.edge_index(1, 0) == 0);
  CHECK_THROWS(g.edge_index(2, 3));

  CHECK_THROWS(Graph::from_edges(3, {{1, 1}}));           // loop
  CHECK_THROWS(Graph::from_edges(3, {{0, 1}, {1, 0}}));   // duplicate
  CHECK_THROWS(Graph::from_edges(3, {{0, 3}}));           // out of range
}

TEST_CASE("adjacency views and degrees") {
  Graph g = cruxkit::complete(4);
  CHECK(g.min_degree() == 3);
  for (Vertex v = 0; v < 4; ++v) {
    CHECK(g.degree(v) == 3);
    auto nb = g.neighbors(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
  }
  CHECK(g.average_degree() == Rational(3, 1));
  CHECK_THROWS(Graph::from_edges(0, {}).average_degree());
  CHECK_THROWS(g.degree(4));
}

TEST_CASE("induced subgraph view and materialization") {
  Graph g = cruxkit::cycle_graph(6);
  VertexSet u = VertexSet::of(6, {0, 1, 2, 4});
  cruxkit::InducedSubgraphView view(g, u);
  CHECK(view.vertex_count() == 4);
  CHECK(view.edge_count() == 2);  // 0-1, 1-2
  CHECK(view.degree_within(1) == 2);
  CHECK(view.degree_within(4) == 0);
  CHECK(view.average_degree() == Rational(1, 1));

  std::vector<Vertex> back;
  Graph h = view.materialize(&back);
  CHECK(h.vertex_count() == 4);
  CHECK(h.edge_count() == 2);
  CHECK(back == std::vector<Vertex>{0, 1, 2, 4});
  CHECK(h.has_edge(0, 1));
  CHECK(h.has_edge(1, 2));
}

TEST_CASE("external neighbourhood and edge boundary") {
  Graph c8 = cruxkit::cycle_graph(8);
  VertexSet u = VertexSet::of(8, {0});
  CHECK(cruxkit::external_neighbourhood(c8, u).to_vector() == std::vector<Vertex>{1, 7});
  CHECK(cruxkit::edge_boundary(c8, u).size() == 2);

  VertexSet arc = VertexSet::of(8, {0, 1, 2, 3});
  CHECK(cruxkit::external_neighbourhood(c8, arc).to_vector() == std::vector<Vertex>{4, 7});
  CHECK(cruxkit::edge_boundary(c8, arc).size() == 2);

  Graph k5 = cruxkit::complete(5);
  VertexSet two = VertexSet::of(5, {0, 1});
  CHECK(cruxkit::external_neighbourhood(k5, two).size() == 3);
  CHECK(cruxkit::edge_boundary(k5, two).size() == 6);
}

TEST_CASE("edge list io round trips") {
  Graph g = cruxkit::hypercube(3);
  std::string text = cruxkit::write_edge_list_string(g);
  std::istringstream in(text);
  Graph back = cruxkit::read_edge_list(in);
  CHECK(back.vertex_count() == g.vertex_count());
  CHECK(back.edges() == g.edges());
}

TEST_CASE("edge list reader keeps isolated vertices and reports line numbers") {
  std::istringstream in("# comment\n\n5 2\n0 1\n2 3\n");
  Graph g = cruxkit::read_edge_list(in);
  CHECK(g.vertex_count() == 5);
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(4) == 0);

  std::istringstream bad("3 1\n0 x\n");
  try {
    cruxkit::read_edge_list(bad);
    CHECK(false);
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}
