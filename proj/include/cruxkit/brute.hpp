#pragma once

#include "cruxkit/graph.hpp"
#include "cruxkit/rational.hpp"

namespace cruxkit {

// Independent reference implementations for cross-checking the production
// code.  Both enumerate without shortcuts and share no helpers with the
// modules they check; they exist for selftest and the test suite.

// Length of the longest simple cycle, by anchored subset dynamic
// programming over endpoint bitmasks.  Returns 0 on acyclic graphs.
// Guard: n <= 20.
int brute_longest_cycle(const Graph& g);

// Crux number c_alpha(g): minimum order of an (induced) subgraph with
// average degree >= alpha * d(g), by scanning every vertex mask and
// comparing densities in 64-bit cross-multiplied integers.
// Pre: g has an edge, alpha in (0,1).  Guard: n <= 20.
long long brute_crux(const Graph& g, const Rational& alpha);

}  // namespace cruxkit
