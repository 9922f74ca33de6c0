#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cruxkit/graph.hpp"
#include "cruxkit/rational.hpp"

namespace cruxkit {

// Sublinear expansion machinery.  A graph H is an (epsilon, t)-expander if
// every X with t/2 <= |X| <= |V(H)|/2 satisfies |N(X)| >= rho(|X|) * |X|,
// where rho is the expansion factor below (natural logarithm).
struct ExpanderParams {
  double epsilon = 0.01;
  double t = 10.0;
};

// rho(x) = 0 for x < t/5, else epsilon / ln^2(15 x / t).
double rho(double x, const ExpanderParams& params);

enum class VerifyMode { automatic, exhaustive, sampled };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::automatic;  // exhaustive iff n <= 20
  int samples = 2000;                       // random qualifying sets (sampled mode)
  uint64_t seed = 0x5EEDED;
};

struct ExpanderVerification {
  enum class Status { exhaustive, sampled, failed };
  Status status = Status::sampled;
  int samples_checked = 0;
  // Present iff status == failed: a set X in the admissible size range with
  // |N(X)| < rho(|X|) * |X| (comparisons at 1e-12 slack).
  std::optional<VertexSet> witness;
};

ExpanderVerification verify_expander(const Graph& g, const ExpanderParams& params,
                                     const VerifyOptions& opts = {});

// Extraction of a dense sublinear-expander subgraph.  For C > 30 and
// epsilon <= 1/(10 C), with delta = C * epsilon / ln 3, the returned
// subgraph H always satisfies
//   d(H) >= (1 - delta) * d(G)      and      min-degree(H) >= d(H) / 2,
// and is certified as an (epsilon, t)-expander at the reported verification
// level (exhaustive for |H| <= 20, sampled above; `failed` carries the
// violating set if the cut loop stalls).
struct ExtractionParams {
  double epsilon = 1.0 / 400.0;
  double t = 10.0;
  double C = 40.0;
  uint64_t seed = 0x5EEDED;
};

struct ExpanderReport {
  VertexSet subgraph;            // vertices of H within the host
  Rational achieved_density;     // d(H), exact
  int min_degree = 0;            // min-degree of H
  double delta = 0;              // C * epsilon / ln 3
  double density_target = 0;     // (1 - delta) * d(G)
  ExpanderVerification verification;
  int iterations = 0;            // cut/peel rounds performed
};

ExpanderReport extract_expander(const Graph& g, const ExtractionParams& params);

// Short connecting path between two vertex sets avoiding W, via BFS in G-W.
// The diameter-style bound (2/epsilon) * ln^3(15 n / t) applies when
// |X1|, |X2| >= x >= t/2 and |W| <= rho(x) * x / 4 for some admissible x and
// the host is an (epsilon, t)-expander; `hypothesis_met` records whether the
// size conditions hold (expansion is assumed, not re-verified here).
struct ConnectResult {
  bool found = false;
  std::vector<Vertex> path;  // endpoints included; empty if not found
  bool hypothesis_met = false;
  double length_bound = 0;   // (2/epsilon) * ln^3(15 n / t)
  bool within_bound = false;
};

ConnectResult connect_avoiding(const Graph& g, const VertexSet& x1, const VertexSet& x2,
                               const VertexSet& w, const ExpanderParams& params);

}  // namespace cruxkit
