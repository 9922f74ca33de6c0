#pragma once

#include <optional>
#include <string>

#include "cruxkit/graph.hpp"
#include "cruxkit/rational.hpp"

namespace cruxkit {

// The crux number c_alpha(G) is the minimum number of vertices of a subgraph
// H of G with average degree d(H) >= alpha * d(G).  Only induced subgraphs
// need be considered: deleting vertices of a witness never helps, and edges
// can only be added back, so an optimal witness may be taken induced.
enum class CruxLowerMethod {
  exhaustive,
  isoperimetric_hypercube,
  isoperimetric_hamming,
  kst_free,
  trivial_alpha_d,
};

std::string to_string(CruxLowerMethod m);

struct CruxCertificate {
  Rational alpha;
  long long lower_bound = 0;
  long long upper_bound = 0;
  std::optional<VertexSet> witness;  // upper_bound == |witness| when present
  CruxLowerMethod lower_method = CruxLowerMethod::trivial_alpha_d;
};

// Exact crux by subset enumeration in ascending size (first witness at the
// minimum size, lowest bitmask first).  Guard: n <= 24.  Density comparisons
// are exact rational.  Pre: alpha in (0,1), g nonempty.
CruxCertificate crux_exact(const Graph& g, const Rational& alpha);

// Upper bound: scan the min-degree peeling sequence (ties: lowest id) and
// return the smallest suffix whose average degree still meets
// alpha * d(G).  The full graph qualifies, so a witness always exists.
// Lower bound: the trivial c_alpha(G) > alpha*d(G).
CruxCertificate crux_upper_heuristic(const Graph& g, const Rational& alpha);

// Closed-form lower bounds for structured hosts.  Each returns the minimum
// possible order of a subgraph with average degree d of the stated host.
long long crux_lb_hypercube(double d);                    // ceil(2^d)
long long crux_lb_hamming(double d, int r);               // ceil(r^(d/(r-1)))
long long crux_lb_kst_free(double alpha_d, int s, int t); // ceil((alpha*d)^(s/(s-1)) / (2t))

// Edge-isoperimetry on the hypercube: measured boundary of U in Q^m versus
// the bound |U| * log2(2^m / |U|).  Returns {measured, bound}; throws if the
// measured boundary undercuts the bound by more than 1e-9.
struct IsoperimetryCheck {
  double boundary = 0;
  double bound = 0;
};
IsoperimetryCheck edge_isoperimetry_check(int m, const VertexSet& u);

}  // namespace cruxkit
