#include <doctest.h>

#include <cmath>
#include <vector>

#include "cruxkit/expander.hpp"
#include "cruxkit/generators.hpp"
#include "cruxkit/graph.hpp"

using cruxkit::ExpanderParams;
using cruxkit::ExpanderVerification;
using cruxkit::Graph;
using cruxkit::Rational;
using cruxkit::Vertex;
using cruxkit::VertexSet;

namespace {

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<cruxkit::Edge> edges(a.edges());
  int off = a.vertex_count();
  for (const auto& e : b.edges()) edges.push_back({e.u + off, e.v + off});
  return Graph::from_edges(off + b.vertex_count(), std::move(edges));
}

}  // namespace

TEST_CASE("expansion factor rho pinned values") {
  ExpanderParams p{0.01, 10.0};
  CHECK(cruxkit::rho(1.0, p) == 0.0);  // below the t/5 threshold
  CHECK(cruxkit::rho(2.0, p) ==
        doctest::Approx(0.01 / std::pow(std::log(3.0), 2)));  // ~8.286e-3
  CHECK(cruxkit::rho(100.0, p) ==
        doctest::Approx(0.01 / std::pow(std::log(150.0), 2)));  // ~3.983e-4
}

TEST_CASE("rho decays while x*rho(x) grows") {
  ExpanderParams p{0.02, 4.0};
  double prev_rho = 1e9;
  for (double x = p.t / 5 + 0.1; x < 1e6; x *= 1.5) {
    double r = cruxkit::rho(x, p);
    CHECK(r <= prev_rho + 1e-15);
    prev_rho = r;
  }
  // x * rho(x) turns nondecreasing once 15x/t reaches e^2, which holds from
  // x = t/2 onward -- the region every expansion hypothesis draws from.
  double prev_xrho = 0;
  for (double x = p.t / 2; x < 1e6; x *= 1.5) {
    double r = cruxkit::rho(x, p);
    CHECK(x * r >= prev_xrho - 1e-12);
    prev_xrho = x * r;
  }
}

TEST_CASE("verify expander exhaustively on small hosts") {
  auto v = cruxkit::verify_expander(cruxkit::complete(6), {0.1, 2.0});
  CHECK(v.status == ExpanderVerification::Status::exhaustive);
  CHECK_FALSE(v.witness.has_value());

  auto q4 = cruxkit::verify_expander(cruxkit::hypercube(4), {0.02, 4.0});
  CHECK(q4.status == ExpanderVerification::Status::exhaustive);
  CHECK_FALSE(q4.witness.has_value());
}

TEST_CASE("verify expander catches a disconnected host") {
  Graph two_triangles = disjoint_union(cruxkit::cycle_graph(3), cruxkit::cycle_graph(3));
  ExpanderParams params{0.1, 2.0};
  auto v = cruxkit::verify_expander(two_triangles, params);
  CHECK(v.status == ExpanderVerification::Status::failed);
  REQUIRE(v.witness.has_value());
  // The witness is a real counterexample in the admissible size range.
  double x = v.witness->size();
  CHECK(x >= params.t / 2);
  CHECK(x <= two_triangles.vertex_count() / 2.0);
  CHECK(cruxkit::external_neighbourhood(two_triangles, *v.witness).size() <
        cruxkit::rho(x, params) * x);
}

TEST_CASE("verify expander sampled mode on a large host") {
  cruxkit::VerifyOptions opts;
  opts.mode = cruxkit::VerifyMode::sampled;
  opts.samples = 300;
  auto v = cruxkit::verify_expander(cruxkit::hypercube(7), {0.02, 4.0}, opts);
  CHECK(v.status == ExpanderVerification::Status::sampled);
  CHECK(v.samples_checked > 0);
  CHECK_FALSE(v.witness.has_value());
}

TEST_CASE("extraction keeps a complete graph whole") {
  Graph k12 = cruxkit::complete(12);
  auto report = cruxkit::extract_expander(k12, {});
  CHECK(report.subgraph.size() == 12);
  CHECK(report.achieved_density == Rational(11, 1));
  CHECK(report.min_degree == 11);
  CHECK(report.verification.status == ExpanderVerification::Status::exhaustive);
}

TEST_CASE("extraction contract on an imbalanced bipartite host") {
  Graph g = cruxkit::complete_bipartite(4, 60);
  auto report = cruxkit::extract_expander(g, {});
  REQUIRE(report.subgraph.size() > 0);
  CHECK(report.achieved_density.to_double() >= report.density_target - 1e-9);
  CHECK(Rational(2 * report.min_degree, 1) >= report.achieved_density);
  // delta = C * epsilon / ln 3 with the default parameters.
  CHECK(report.delta == doctest::Approx(40.0 * (1.0 / 400.0) / std::log(3.0)));
  CHECK(report.density_target ==
        doctest::Approx((1 - report.delta) * g.average_degree().to_double()));
  // Recompute density and min degree from the returned vertex set.
  cruxkit::InducedSubgraphView h(g, report.subgraph);
  CHECK(h.average_degree() == report.achieved_density);
}

TEST_CASE("extraction lands inside the dense component") {
  Graph g = disjoint_union(cruxkit::complete(8), cruxkit::complete(3));
  auto report = cruxkit::extract_expander(g, {});
  REQUIRE(report.subgraph.size() > 0);
  for (Vertex v : report.subgraph.to_vector()) CHECK(v < 8);
  CHECK(report.achieved_density.to_double() >= report.density_target - 1e-9);
  CHECK(Rational(2 * report.min_degree, 1) >= report.achieved_density);
}

TEST_CASE("connect avoiding walks around a forbidden arc") {
  Graph c8 = cruxkit::cycle_graph(8);
  auto r = cruxkit::connect_avoiding(c8, VertexSet::of(8, {0}), VertexSet::of(8, {4}),
                                     VertexSet::of(8, {1, 2}), {0.1, 2.0});
  CHECK(r.found);
  CHECK(r.path == std::vector<Vertex>{0, 7, 6, 5, 4});
}

TEST_CASE("connect avoiding degenerate and blocked cases") {
  Graph c8 = cruxkit::cycle_graph(8);
  // Overlapping sets connect with a length-0 path.
  auto same = cruxkit::connect_avoiding(c8, VertexSet::of(8, {3}), VertexSet::of(8, {3}),
                                        VertexSet(8), {0.1, 2.0});
  CHECK(same.found);
  CHECK(same.path == std::vector<Vertex>{3});
  // W separates the endpoints entirely.
  auto blocked = cruxkit::connect_avoiding(c8, VertexSet::of(8, {0}),
                                           VertexSet::of(8, {4}),
                                           VertexSet::of(8, {1, 2, 6, 7}), {0.1, 2.0});
  CHECK_FALSE(blocked.found);
  CHECK(blocked.path.empty());
}

TEST_CASE("connect avoiding reports the hypothesis and the bound") {
  Graph q6 = cruxkit::hypercube(6);
  ExpanderParams params{0.02, 4.0};
  VertexSet x1(64), x2(64);
  for (int v = 0; v < 8; ++v) x1.add(v);
  for (int v = 56; v < 64; ++v) x2.add(v);
  auto r = cruxkit::connect_avoiding(q6, x1, x2, VertexSet(64), params);
  CHECK(r.found);
  CHECK(r.hypothesis_met);  // |X1|=|X2|=8 >= t/2=2, |W|=0
  CHECK(r.length_bound ==
        doctest::Approx((2.0 / params.epsilon) *
                        std::pow(std::log(15.0 * 64 / params.t), 3)));
  CHECK(r.within_bound);
  CHECK(static_cast<double>(r.path.size() - 1) <= r.length_bound);

  // Tiny sets below t/2 leave the hypothesis unmet but may still connect.
  auto small = cruxkit::connect_avoiding(q6, VertexSet::of(64, {0}),
                                         VertexSet::of(64, {63}), VertexSet(64),
                                         {0.02, 40.0});
  CHECK(small.found);
  CHECK_FALSE(small.hypothesis_met);
}
