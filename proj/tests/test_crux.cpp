#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cruxkit/brute.hpp"
#include "cruxkit/crux.hpp"
#include "cruxkit/generators.hpp"
#include "cruxkit/graph.hpp"
#include "cruxkit/rng.hpp"

using cruxkit::CruxCertificate;
using cruxkit::Edge;
using cruxkit::Graph;
using cruxkit::Rational;
using cruxkit::Vertex;
using cruxkit::VertexSet;

namespace {

Graph random_graph(int n, double p, uint64_t key) {
  std::vector<Edge> edges;
  int idx = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++idx)
      if (cruxkit::edge_uniform01(key, 0, 0, idx) < p) edges.push_back({u, v});
  return Graph::from_edges(n, std::move(edges));
}

// The witness really is an alpha-crux: induced average degree >= alpha * d(G).
void check_witness(const Graph& g, const Rational& alpha, const CruxCertificate& cert) {
  REQUIRE(cert.witness.has_value());
  CHECK(cert.witness->size() == cert.upper_bound);
  cruxkit::InducedSubgraphView h(g, *cert.witness);
  CHECK(h.average_degree() >= alpha * g.average_degree());
}

}  // namespace

TEST_CASE("crux exact pinned values") {
  CHECK(cruxkit::crux_exact(cruxkit::complete(2), Rational(9, 10)).upper_bound == 2);
  CHECK(cruxkit::crux_exact(cruxkit::complete(5), Rational(1, 2)).upper_bound == 3);
  CHECK(cruxkit::crux_exact(cruxkit::complete(6), Rational(1, 2)).upper_bound == 4);
  CHECK(cruxkit::crux_exact(cruxkit::hypercube(3), Rational(2, 3)).upper_bound == 4);

  Rational alpha(1, 2);
  Graph k6 = cruxkit::complete(6);
  CruxCertificate cert = cruxkit::crux_exact(k6, alpha);
  CHECK(cert.lower_bound == cert.upper_bound);
  CHECK(cert.lower_method == cruxkit::CruxLowerMethod::exhaustive);
  check_witness(k6, alpha, cert);
}

TEST_CASE("crux exact guards") {
  CHECK_THROWS_AS(cruxkit::crux_exact(cruxkit::complete(25), Rational(1, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(cruxkit::crux_exact(cruxkit::complete(5), Rational(1, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(cruxkit::crux_exact(cruxkit::complete(5), Rational(0, 1)),
                  std::invalid_argument);
  // Edgeless host: d(G) = 0, so a single vertex already meets the density
  // target and the crux is 1.
  CHECK(cruxkit::crux_exact(cruxkit::path_graph(1), Rational(1, 2)).upper_bound == 1);
}

TEST_CASE("crux heuristic brackets the exact value") {
  for (int i = 0; i < 20; ++i) {
    Graph g = random_graph(6 + i % 7, 0.45, 0x11C0 + i);
    if (g.edge_count() == 0) continue;
    for (const Rational& alpha : {Rational(3, 10), Rational(1, 2), Rational(7, 10)}) {
      CruxCertificate exact = cruxkit::crux_exact(g, alpha);
      CruxCertificate heur = cruxkit::crux_upper_heuristic(g, alpha);
      CHECK(heur.upper_bound >= exact.upper_bound);
      CHECK(heur.lower_bound <= exact.upper_bound);
      check_witness(g, alpha, heur);
    }
  }
  // On complete graphs the peeling suffix is optimal.
  for (int n = 3; n <= 9; ++n) {
    Graph kn = cruxkit::complete(n);
    CHECK(cruxkit::crux_upper_heuristic(kn, Rational(1, 2)).upper_bound ==
          cruxkit::crux_exact(kn, Rational(1, 2)).upper_bound);
  }
}

TEST_CASE("crux is monotone in alpha and above the trivial bound") {
  std::vector<Rational> grid{{3, 10}, {1, 2}, {7, 10}, {9, 10}};
  std::vector<Graph> hosts;
  hosts.push_back(cruxkit::hypercube(3));
  hosts.push_back(cruxkit::complete(7));
  hosts.push_back(random_graph(10, 0.4, 0xA11CE));
  for (const Graph& g : hosts) {
    REQUIRE(g.edge_count() > 0);
    long long prev = 0;
    for (const Rational& alpha : grid) {
      long long c = cruxkit::crux_exact(g, alpha).upper_bound;
      CHECK(c >= prev);
      prev = c;
      // c_alpha(G) > alpha * d(G).
      CHECK(Rational(c, 1) > alpha * g.average_degree());
    }
  }
}

TEST_CASE("crux of a dense subgraph bounds the host crux") {
  // If H <= G has d(H) >= d(G)/2 then a 2alpha-crux of H is an alpha-crux
  // of G, so c_alpha(G) <= c_{2alpha}(H).
  Rational alpha(3, 10), dbl(3, 5);
  int covered = 0;
  for (int i = 0; i < 12; ++i) {
    Graph g = random_graph(10 + i % 3, 0.5, 0x5B6 + i);
    if (g.edge_count() == 0) continue;
    VertexSet u(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if ((cruxkit::splitmix64(i * 97 + v) & 3) != 0) u.add(v);
    if (u.size() < 3) continue;
    cruxkit::InducedSubgraphView view(g, u);
    if (view.edge_count() == 0) continue;
    if (!(view.average_degree() * Rational(2, 1) >= g.average_degree())) continue;
    Graph h = view.materialize();
    CHECK(cruxkit::crux_exact(g, alpha).upper_bound <=
          cruxkit::crux_exact(h, dbl).upper_bound);
    ++covered;
  }
  CHECK(covered >= 5);
}

TEST_CASE("crux exact agrees with the brute oracle on random graphs") {
  for (int i = 0; i < 25; ++i) {
    Graph g = random_graph(5 + i % 8, 0.3 + 0.05 * (i % 7), 0xC4C4 + i);
    if (g.edge_count() == 0) continue;
    for (const Rational& alpha : {Rational(3, 10), Rational(7, 10)})
      CHECK(cruxkit::crux_exact(g, alpha).upper_bound == cruxkit::brute_crux(g, alpha));
  }
}

TEST_CASE("closed form lower bounds") {
  CHECK(cruxkit::crux_lb_hypercube(3) == 8);
  CHECK(cruxkit::crux_lb_hypercube(0) == 1);
  CHECK(cruxkit::crux_lb_hypercube(2.5) == 6);  // ceil(2^2.5) = ceil(5.656..)
  CHECK(cruxkit::crux_lb_hamming(4, 3) == 9);   // ceil(3^(4/2))
  CHECK(cruxkit::crux_lb_hamming(3, 3) == 6);   // ceil(3^1.5) = ceil(5.196..)
  CHECK(cruxkit::crux_lb_kst_free(10, 2, 2) == 25);  // ceil(10^2 / 4)
  CHECK(cruxkit::crux_lb_kst_free(0, 2, 2) == 0);
  CHECK(cruxkit::crux_lb_kst_free(12, 2, 3) == 24);  // ceil(144 / 6)
}

TEST_CASE("hypercube crux respects the isoperimetric lower bound") {
  for (int m = 2; m <= 4; ++m) {
    Graph q = cruxkit::hypercube(m);
    for (const Rational& alpha : {Rational(1, 2), Rational(2, 3)}) {
      long long c = cruxkit::crux_exact(q, alpha).upper_bound;
      CHECK(c >= cruxkit::crux_lb_hypercube(alpha.to_double() * m));
    }
  }
}

TEST_CASE("edge isoperimetry pinned examples") {
  // An edge of Q^3: boundary 4, bound 2*log2(8/2) = 4 (tight).
  auto chk = cruxkit::edge_isoperimetry_check(3, VertexSet::of(8, {0, 1}));
  CHECK(chk.boundary == doctest::Approx(4.0));
  CHECK(chk.bound == doctest::Approx(4.0));
  // A single vertex: boundary 3 = log2(8).
  auto single = cruxkit::edge_isoperimetry_check(3, VertexSet::of(8, {0}));
  CHECK(single.boundary == doctest::Approx(3.0));
  CHECK(single.bound == doctest::Approx(3.0));
  // The full cube has empty boundary and zero bound.
  auto full = cruxkit::edge_isoperimetry_check(3, VertexSet::full(8));
  CHECK(full.boundary == doctest::Approx(0.0));
  CHECK(full.bound == doctest::Approx(0.0));
  CHECK_THROWS_AS(cruxkit::edge_isoperimetry_check(3, VertexSet(8)),
                  std::invalid_argument);
  CHECK_THROWS_AS(cruxkit::edge_isoperimetry_check(2, VertexSet::of(8, {0})),
                  std::invalid_argument);
}
