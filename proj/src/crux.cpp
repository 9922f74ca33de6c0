#include "cruxkit/crux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cruxkit {

std::string to_string(CruxLowerMethod m) {
  switch (m) {
    case CruxLowerMethod::exhaustive: return "exhaustive";
    case CruxLowerMethod::isoperimetric_hypercube: return "isoperimetric_hypercube";
    case CruxLowerMethod::isoperimetric_hamming: return "isoperimetric_hamming";
    case CruxLowerMethod::kst_free: return "kst_free";
    case CruxLowerMethod::trivial_alpha_d: return "trivial_alpha_d";
  }
  return "?";
}

namespace {

void check_alpha(const Rational& alpha) {
  if (!(alpha > Rational(0, 1)) || !(alpha < Rational(1, 1)))
    throw std::invalid_argument("crux: alpha must lie in (0,1), got " + alpha.str());
}

// c_alpha(G) > alpha*d(G), so lower = floor(alpha*d(G)) + 1.
long long trivial_lower(const Graph& g, const Rational& alpha) {
  Rational ad = alpha * g.average_degree();
  return ad.floor() + 1;
}

}  // namespace

CruxCertificate crux_exact(const Graph& g, const Rational& alpha) {
  check_alpha(alpha);
  int n = g.vertex_count();
  if (n == 0) throw std::invalid_argument("crux_exact: empty graph");
  if (n > 24) throw std::invalid_argument("crux_exact: n <= 24 required, got " + std::to_string(n));

  std::vector<uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  // Subgraph on mask U qualifies iff 2 e(U) / |U| >= alpha * 2 e(G) / n,
  // i.e. e(U) * alpha.den * n >= alpha.num * e(G) * |U| (all integers).
  const long long eg = static_cast<long long>(g.edge_count());
  auto qualifies = [&](uint32_t mask, int size) {
    long long twice_inner = 0;
    uint32_t rest = mask;
    while (rest) {
      int v = __builtin_ctz(rest);
      rest &= rest - 1;
      twice_inner += __builtin_popcount(adj[v] & mask);
    }
    long long e_u = twice_inner / 2;
    __int128 lhs = static_cast<__int128>(e_u) * alpha.den * n;
    __int128 rhs = static_cast<__int128>(alpha.num) * eg * size;
    return lhs >= rhs;
  };

  for (int size = 1; size <= n; ++size) {
    // Gosper's hack: masks of fixed popcount in ascending numeric order.
    uint32_t mask = (size == 32) ? ~0u : (1u << size) - 1;
    uint32_t limit = (n == 32) ? ~0u : (1u << n);
    while (mask < limit) {
      if (qualifies(mask, size)) {
        VertexSet witness(n);
        for (int v = 0; v < n; ++v)
          if (mask & (1u << v)) witness.add(v);
        CruxCertificate cert;
        cert.alpha = alpha;
        cert.lower_bound = size;
        cert.upper_bound = size;
        cert.witness = witness;
        cert.lower_method = CruxLowerMethod::exhaustive;
        return cert;
      }
      uint32_t c = mask & -mask;
      uint32_t r = mask + c;
      if (r >= limit && size < n) break;
      mask = (((r ^ mask) >> 2) / c) | r;
      if (mask >= limit) break;
    }
  }
  // Unreachable: the whole vertex set always qualifies.
  throw std::logic_error("crux_exact: no witness found");
}

CruxCertificate crux_upper_heuristic(const Graph& g, const Rational& alpha) {
  check_alpha(alpha);
  int n = g.vertex_count();
  if (n == 0) throw std::invalid_argument("crux_upper_heuristic: empty graph");

  // Peel min-degree vertices (ties: lowest id), recording the removal order.
  std::vector<int> deg(n);
  std::vector<bool> alive(n, true);
  for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
  long long edges_left = static_cast<long long>(g.edge_count());
  std::vector<Vertex> removal_order;
  removal_order.reserve(n);
  std::vector<long long> suffix_edges(n + 1, 0);  // edges alive before step i
  for (int step = 0; step < n; ++step) {
    suffix_edges[step] = edges_left;
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (alive[v] && (best == -1 || deg[v] < deg[best])) best = v;
    alive[best] = false;
    removal_order.push_back(best);
    edges_left -= deg[best];
    for (Vertex w : g.neighbors(best))
      if (alive[w]) --deg[w];
  }

  // Suffix after i removals has n-i vertices and suffix_edges[i] edges.
  // Find the largest i whose suffix still meets the threshold
  //   e_suffix * alpha.den * n >= alpha.num * e(G) * (n - i).
  const long long eg = static_cast<long long>(g.edge_count());
  int best_i = 0;
  for (int i = 0; i < n; ++i) {
    __int128 lhs = static_cast<__int128>(suffix_edges[i]) * alpha.den * n;
    __int128 rhs = static_cast<__int128>(alpha.num) * eg * (n - i);
    if (lhs >= rhs) best_i = i;
  }

  VertexSet witness(n);
  for (int i = best_i; i < n; ++i) witness.add(removal_order[i]);

  CruxCertificate cert;
  cert.alpha = alpha;
  cert.upper_bound = n - best_i;
  cert.witness = witness;
  cert.lower_bound = trivial_lower(g, alpha);
  cert.lower_method = CruxLowerMethod::trivial_alpha_d;
  return cert;
}

long long crux_lb_hypercube(double d) {
  if (d < 0) throw std::invalid_argument("crux_lb_hypercube: d >= 0 required");
  return static_cast<long long>(std::ceil(std::exp2(d) - 1e-9));
}

long long crux_lb_hamming(double d, int r) {
  if (d < 0 || r < 2)
    throw std::invalid_argument("crux_lb_hamming: require d >= 0 and r >= 2");
  double v = std::pow(static_cast<double>(r), d / (r - 1));
  return static_cast<long long>(std::ceil(v - 1e-9));
}

long long crux_lb_kst_free(double alpha_d, int s, int t) {
  if (s < 2 || t < 1)
    throw std::invalid_argument("crux_lb_kst_free: require s >= 2 and t >= 1");
  if (alpha_d < 0) throw std::invalid_argument("crux_lb_kst_free: alpha_d >= 0 required");
  double v = std::pow(alpha_d, static_cast<double>(s) / (s - 1)) / (2.0 * t);
  return static_cast<long long>(std::ceil(v - 1e-9));
}

IsoperimetryCheck edge_isoperimetry_check(int m, const VertexSet& u) {
  if (m < 1 || m > 24) throw std::invalid_argument("edge_isoperimetry_check: 1 <= m <= 24");
  if (u.universe() != (1 << m))
    throw std::invalid_argument("edge_isoperimetry_check: universe must be 2^m");
  long long size = u.size();
  if (size == 0)
    throw std::invalid_argument("edge_isoperimetry_check: U must be nonempty");
  long long boundary = 0;
  for (Vertex v : u.to_vector())
    for (int j = 0; j < m; ++j)
      if (!u.contains(v ^ (1 << j))) ++boundary;
  IsoperimetryCheck out;
  out.boundary = static_cast<double>(boundary);
  out.bound = static_cast<double>(size) * std::log2(std::exp2(m) / static_cast<double>(size));
  if (out.boundary < out.bound - 1e-9)
    throw std::logic_error("edge_isoperimetry_check: measured boundary below bound");
  return out;
}

}  // namespace cruxkit
