#include "cruxkit/brute.hpp"

#include <stdexcept>
#include <vector>

namespace cruxkit {

int brute_longest_cycle(const Graph& g) {
  int n = g.vertex_count();
  if (n > 20) throw std::invalid_argument("brute_longest_cycle: n <= 20 required");
  if (n == 0) return 0;
  std::vector<uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  int best = 0;
  // Anchor each cycle at its minimum vertex a; paths may only use
  // vertices >= a.  dp[S >> a] = endpoint mask of paths from a covering S.
  for (int a = 0; a < n; ++a) {
    uint32_t allowed = (uint32_t(1) << n) - 1u - ((1u << a) - 1u);
    std::vector<uint32_t> dp(std::size_t(1) << (n - a), 0);
    dp[1] = 1u << a;  // S = {a}
    for (uint32_t s = 1; s < (1u << (n - a)); ++s) {
      uint32_t ends = dp[s];
      if (!ends) continue;
      uint32_t mask = s << a;
      int size = __builtin_popcount(mask);
      if (size >= 3 && (ends & adj[a]) != 0) best = std::max(best, size);
      uint32_t rest = ends;
      while (rest) {
        int v = __builtin_ctz(rest);
        rest &= rest - 1;
        uint32_t nxt = adj[v] & allowed & ~mask;
        while (nxt) {
          int w = __builtin_ctz(nxt);
          nxt &= nxt - 1;
          dp[(mask | (1u << w)) >> a] |= 1u << w;
        }
      }
    }
  }
  return best;
}

long long brute_crux(const Graph& g, const Rational& alpha) {
  int n = g.vertex_count();
  if (n > 20) throw std::invalid_argument("brute_crux: n <= 20 required");
  if (g.edge_count() == 0) throw std::invalid_argument("brute_crux: graph has no edges");
  if (!(alpha > Rational(0, 1) && alpha < Rational(1, 1)))
    throw std::invalid_argument("brute_crux: alpha must lie in (0,1)");
  std::vector<uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  long long eg = static_cast<long long>(g.edge_count());
  long long anum = alpha.num, aden = alpha.den;
  long long best = n;  // the full graph always qualifies
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    int h = __builtin_popcount(mask);
    if (h >= best) continue;
    long long eh = 0;
    uint32_t rest = mask;
    while (rest) {
      int v = __builtin_ctz(rest);
      rest &= rest - 1;
      eh += __builtin_popcount(adj[v] & mask);
    }
    eh /= 2;
    // d(H) >= alpha d(G)  <=>  e_H * n * aden >= anum * e_G * h
    if (eh * n * aden >= anum * eg * h) best = h;
  }
  return best;
}

}  // namespace cruxkit
