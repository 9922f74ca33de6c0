#include <doctest.h>

#include <stdexcept>

#include "cruxkit/brute.hpp"
#include "cruxkit/generators.hpp"
#include "cruxkit/graph.hpp"

using cruxkit::Graph;
using cruxkit::Rational;

TEST_CASE("brute longest cycle on named graphs") {
  CHECK(cruxkit::brute_longest_cycle(cruxkit::cycle_graph(5)) == 5);
  CHECK(cruxkit::brute_longest_cycle(cruxkit::complete(4)) == 4);
  CHECK(cruxkit::brute_longest_cycle(cruxkit::complete_bipartite(3, 3)) == 6);
  CHECK(cruxkit::brute_longest_cycle(cruxkit::complete_bipartite(2, 5)) == 4);
  CHECK(cruxkit::brute_longest_cycle(cruxkit::path_graph(6)) == 0);
  CHECK(cruxkit::brute_longest_cycle(cruxkit::complete_bipartite(1, 5)) == 0);
  CHECK(cruxkit::brute_longest_cycle(cruxkit::hypercube(3)) == 8);
  // Petersen graph: 3-regular, circumference 9 (hypohamiltonian).
  Graph petersen = Graph::from_edges(
      10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
           {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5},
           {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}});
  CHECK(cruxkit::brute_longest_cycle(petersen) == 9);
  CHECK_THROWS_AS(cruxkit::brute_longest_cycle(cruxkit::complete(21)),
                  std::invalid_argument);
}

TEST_CASE("brute crux on named graphs") {
  // K_6 at alpha = 1/2: need average degree >= 2.5, so K_4 and nothing smaller.
  CHECK(cruxkit::brute_crux(cruxkit::complete(6), Rational(1, 2)) == 4);
  CHECK(cruxkit::brute_crux(cruxkit::complete(2), Rational(9, 10)) == 2);
  CHECK(cruxkit::brute_crux(cruxkit::complete(5), Rational(1, 2)) == 3);
  CHECK(cruxkit::brute_crux(cruxkit::hypercube(3), Rational(2, 3)) == 4);
  CHECK_THROWS_AS(cruxkit::brute_crux(cruxkit::complete(21), Rational(1, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(cruxkit::brute_crux(cruxkit::complete(5), Rational(3, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(cruxkit::brute_crux(cruxkit::path_graph(1), Rational(1, 2)),
                  std::invalid_argument);
}
