#include "cruxkit/cycles.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "cruxkit/rng.hpp"

namespace cruxkit {

std::string to_string(CycleMethod m) {
  switch (m) {
    case CycleMethod::greedy_min_degree: return "greedy_min_degree";
    case CycleMethod::posa_rotation: return "posa_rotation";
    case CycleMethod::pipeline: return "pipeline";
    case CycleMethod::dfs_stack: return "dfs_stack";
    case CycleMethod::chord_splice: return "chord_splice";
  }
  return "?";
}

bool is_valid_cycle(const Graph& g, const std::vector<Vertex>& cycle) {
  int k = static_cast<int>(cycle.size());
  if (k < 3) return false;
  std::set<Vertex> seen(cycle.begin(), cycle.end());
  if (static_cast<int>(seen.size()) != k) return false;
  for (Vertex v : cycle)
    if (v < 0 || v >= g.vertex_count()) return false;
  for (int i = 0; i + 1 < k; ++i)
    if (!g.has_edge(cycle[i], cycle[i + 1])) return false;
  return g.has_edge(cycle[k - 1], cycle[0]);
}

// ---------------------------------------------------------------------------
// DFS forests
// ---------------------------------------------------------------------------

bool DfsForest::is_ancestor(Vertex anc, Vertex desc) const {
  if (!tin.empty())
    return tin[anc] <= tin[desc] && tout[desc] <= tout[anc];
  // Fallback: climb parents.
  while (desc != -1 && depth[desc] >= depth[anc]) {
    if (desc == anc) return true;
    desc = parent[desc];
  }
  return false;
}

int DfsForest::tree_distance(Vertex anc, Vertex desc) const {
  if (!is_ancestor(anc, desc)) return -1;
  return depth[desc] - depth[anc];
}

DfsForest dfs_forest(const Graph& g) {
  int n = g.vertex_count();
  DfsForest f;
  f.parent.assign(n, -1);
  f.depth.assign(n, 0);
  f.order.assign(n, -1);
  int clock = 0;
  std::vector<int> cursor(n, 0);
  std::vector<Vertex> stack;
  for (Vertex r = 0; r < n; ++r) {
    if (f.order[r] != -1) continue;
    f.roots.push_back(r);
    f.order[r] = clock++;
    stack.assign(1, r);
    while (!stack.empty()) {
      Vertex v = stack.back();
      auto nb = g.neighbors(v);
      bool advanced = false;
      while (cursor[v] < static_cast<int>(nb.size())) {
        Vertex u = nb[cursor[v]++];
        if (f.order[u] != -1) continue;
        f.parent[u] = v;
        f.depth[u] = f.depth[v] + 1;
        f.order[u] = clock++;
        stack.push_back(u);
        advanced = true;
        break;
      }
      if (!advanced) stack.pop_back();
    }
  }
  build_euler_intervals(f, g);
  return f;
}

void build_euler_intervals(DfsForest& f, const Graph& g) {
  int n = g.vertex_count();
  std::vector<std::vector<Vertex>> children(n);
  for (Vertex v = 0; v < n; ++v)
    if (f.parent[v] != -1) children[f.parent[v]].push_back(v);
  f.tin.assign(n, 0);
  f.tout.assign(n, 0);
  int clock = 0;
  std::vector<std::pair<Vertex, int>> stack;
  for (Vertex r : f.roots) {
    stack.push_back({r, 0});
    f.tin[r] = clock++;
    while (!stack.empty()) {
      auto& [v, ci] = stack.back();
      if (ci < static_cast<int>(children[v].size())) {
        Vertex c = children[v][ci++];
        f.tin[c] = clock++;
        stack.push_back({c, 0});
      } else {
        f.tout[v] = clock++;
        stack.pop_back();
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Greedy min-degree cycle
// ---------------------------------------------------------------------------

namespace {

// Fixed-threshold peel: remove vertices with deg < d(G)/2, i.e.
// deg * n_G < e_G exactly.  The average degree never drops, so the survivor
// set is nonempty whenever G has an edge, and has min-degree >= d(G)/2.
std::vector<bool> peel_below_half_host_average(const Graph& g) {
  int n = g.vertex_count();
  long long eg = static_cast<long long>(g.edge_count());
  std::vector<bool> alive(n, true);
  std::vector<int> deg(n);
  for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      if (static_cast<long long>(deg[v]) * n < eg) {
        alive[v] = false;
        changed = true;
        for (Vertex w : g.neighbors(v))
          if (alive[w]) --deg[w];
      }
    }
  }
  return alive;
}

// Iteratively removes vertices of degree <= 1 within the alive set.
void reduce_to_two_core(const Graph& g, std::vector<bool>& alive) {
  int n = g.vertex_count();
  std::vector<int> deg(n, 0);
  for (int v = 0; v < n; ++v)
    if (alive[v])
      for (Vertex w : g.neighbors(v))
        if (alive[w]) ++deg[v];
  std::deque<Vertex> queue;
  for (int v = 0; v < n; ++v)
    if (alive[v] && deg[v] <= 1) queue.push_back(v);
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    if (!alive[v]) continue;
    alive[v] = false;
    for (Vertex w : g.neighbors(v))
      if (alive[w] && --deg[w] == 1) queue.push_back(w);
  }
}

// Extends a path greedily at both ends (lowest-id neighbour off the path),
// then closes it at the farthest on-path neighbour of either endpoint.
std::vector<Vertex> maximal_path_closure(const Graph& g, const std::vector<bool>& alive,
                                         Vertex start) {
  int n = g.vertex_count();
  std::deque<Vertex> path{start};
  std::vector<bool> on_path(n, false);
  on_path[start] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (Vertex u : g.neighbors(path.back()))
      if (alive[u] && !on_path[u]) {
        path.push_back(u);
        on_path[u] = true;
        grew = true;
        break;
      }
    for (Vertex u : g.neighbors(path.front()))
      if (alive[u] && !on_path[u]) {
        path.push_front(u);
        on_path[u] = true;
        grew = true;
        break;
      }
  }
  std::vector<Vertex> pv(path.begin(), path.end());
  std::vector<int> pos(n, -1);
  for (int i = 0; i < static_cast<int>(pv.size()); ++i) pos[pv[i]] = i;
  int len = static_cast<int>(pv.size());
  // Close at the endpoint neighbour farthest along the path in either
  // direction; a maximal path keeps every endpoint neighbour on the path.
  std::vector<Vertex> best;
  int earliest = len;
  for (Vertex u : g.neighbors(pv[len - 1]))
    if (alive[u] && pos[u] != -1) earliest = std::min(earliest, pos[u]);
  if (earliest <= len - 3 && len - earliest >= 3 &&
      static_cast<int>(best.size()) < len - earliest)
    best.assign(pv.begin() + earliest, pv.end());
  int latest = -1;
  for (Vertex u : g.neighbors(pv[0]))
    if (alive[u] && pos[u] != -1) latest = std::max(latest, pos[u]);
  if (latest >= 2 && latest + 1 >= 3 && static_cast<int>(best.size()) < latest + 1)
    best.assign(pv.begin(), pv.begin() + latest + 1);
  return best;
}

}  // namespace

CycleSearchResult greedy_min_degree_cycle(const Graph& g) {
  CycleSearchResult out;
  if (g.vertex_count() == 0 || g.edge_count() == 0) {
    out.note = "no cycle: graph has no edges";
    return out;
  }
  std::vector<bool> alive = peel_below_half_host_average(g);
  int delta_h = 1 << 30;
  int h_size = 0;
  {
    std::vector<int> deg(g.vertex_count(), 0);
    for (int v = 0; v < g.vertex_count(); ++v)
      if (alive[v]) {
        ++h_size;
        for (Vertex w : g.neighbors(v))
          if (alive[w]) ++deg[v];
      }
    for (int v = 0; v < g.vertex_count(); ++v)
      if (alive[v]) delta_h = std::min(delta_h, deg[v]);
  }
  if (h_size == 0) {
    out.note = "no cycle: peeling removed every vertex";
    return out;
  }
  std::vector<bool> core = alive;
  if (delta_h < 2) reduce_to_two_core(g, core);
  bool core_empty = true;
  Vertex start = -1;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (core[v]) { core_empty = false; start = v; break; }
  if (core_empty) {
    out.note = "no cycle: graph is acyclic after peeling";
    return out;
  }
  std::vector<Vertex> cycle = maximal_path_closure(g, core, start);
  if (cycle.size() < 3) {
    out.note = "no cycle found";
    return out;
  }
  CycleResult r;
  r.vertices = std::move(cycle);
  r.method = CycleMethod::greedy_min_degree;
  if (delta_h >= 2) r.bound_claimed = static_cast<double>(delta_h + 1);
  if (!is_valid_cycle(g, r.vertices))
    throw std::logic_error("greedy_min_degree_cycle: produced invalid cycle");
  out.cycle = std::move(r);
  out.hypothesis_met = delta_h >= 2;
  return out;
}

// ---------------------------------------------------------------------------
// Rotation-extension search
// ---------------------------------------------------------------------------

namespace {

struct RotationSearch {
  const Graph& g;
  std::vector<Vertex> path;
  std::vector<int> pos;  // pos[v] = index on path, -1 otherwise

  explicit RotationSearch(const Graph& host) : g(host), pos(host.vertex_count(), -1) {}

  void reset(Vertex start) {
    for (Vertex v : path) pos[v] = -1;
    path.assign(1, start);
    pos[start] = 0;
  }

  // Appends a uniformly random off-path neighbour of the back endpoint.
  bool extend_back(std::mt19937_64& rng) {
    Vertex pick = -1;
    uint64_t seen = 0;
    for (Vertex u : g.neighbors(path.back()))
      if (pos[u] == -1 && rng() % ++seen == 0) pick = u;
    if (pick == -1) return false;
    pos[pick] = static_cast<int>(path.size());
    path.push_back(pick);
    return true;
  }

  void reverse_path() {
    std::reverse(path.begin(), path.end());
    for (int i = 0; i < static_cast<int>(path.size()); ++i) pos[path[i]] = i;
  }

  // Rotation at the back endpoint with pivot index i (edge back--path[i],
  // i <= len-3): path[0..i] stays, path[i+1..] is reversed.
  void rotate(int i) {
    std::reverse(path.begin() + i + 1, path.end());
    for (int j = i + 1; j < static_cast<int>(path.size()); ++j) pos[path[j]] = j;
  }

  // Longest cycle closable from the current path at either endpoint.
  std::vector<Vertex> best_closure() const {
    int len = static_cast<int>(path.size());
    if (len < 3) return {};
    int earliest = len;
    for (Vertex u : g.neighbors(path[len - 1]))
      if (pos[u] != -1) earliest = std::min(earliest, pos[u]);
    int latest = -1;
    for (Vertex u : g.neighbors(path[0]))
      if (pos[u] != -1) latest = std::max(latest, pos[u]);
    std::vector<Vertex> best;
    if (earliest <= len - 3)
      best.assign(path.begin() + earliest, path.end());
    if (latest >= 2 && latest + 1 > static_cast<int>(best.size()))
      best.assign(path.begin(), path.begin() + latest + 1);
    return best;
  }
};

}  // namespace

CycleSearchResult posa_rotation_cycle(const Graph& g, int target_t,
                                      const PosaOptions& opts) {
  CycleSearchResult out;
  int n = g.vertex_count();
  if (n == 0 || g.edge_count() == 0) {
    out.note = "no cycle: graph has no edges";
    return out;
  }
  // Every cycle lies inside the 2-core, and rotations stall on pendant
  // vertices (an endpoint of degree 1 admits no pivot), so trim the graph
  // first and search the core.  Vertices are mapped back before returning.
  std::vector<bool> keep(n, true);
  reduce_to_two_core(g, keep);
  VertexSet core_set(n);
  for (int v = 0; v < n; ++v)
    if (keep[v]) core_set.add(v);
  if (core_set.size() == 0) {
    out.note = "no cycle: graph is acyclic (empty 2-core)";
    return out;
  }
  std::vector<Vertex> back;
  Graph core = InducedSubgraphView(g, core_set).materialize(&back);
  int cn = core.vertex_count();

  int restarts = opts.restarts > 0 ? opts.restarts : cn;
  long long budget = opts.step_budget > 0
                         ? opts.step_budget
                         : std::max<long long>(200, 8LL * cn);

  std::vector<Vertex> starts(cn);
  std::iota(starts.begin(), starts.end(), 0);
  {
    std::mt19937_64 shuffler(splitmix64(opts.seed));
    std::shuffle(starts.begin(), starts.end(), shuffler);
  }

  std::vector<Vertex> best;
  RotationSearch rs(core);
  std::set<Vertex> tabu;

  auto consider = [&](const std::vector<Vertex>& cand) {
    if (cand.size() > best.size()) best = cand;
  };

  for (int restart = 0; restart < restarts; ++restart) {
    if (opts.stop_at_target && static_cast<int>(best.size()) >= target_t + 1) break;
    std::mt19937_64 rng(
        splitmix64(opts.seed ^ (0x9E3779B97F4A7C15ULL * (restart + 1))));
    rs.reset(starts[restart % cn]);
    tabu.clear();
    long long steps = 0;
    bool back_done = false, front_done = false;
    while (steps++ < budget) {
      if (!back_done && rs.extend_back(rng)) {
        tabu.clear();
        front_done = false;
        continue;
      }
      back_done = true;
      if (!front_done) {
        rs.reverse_path();
        if (rs.extend_back(rng)) {
          tabu.clear();
          back_done = false;
          continue;
        }
        rs.reverse_path();
        front_done = true;
      }
      // Both ends stuck: harvest closures.
      consider(rs.best_closure());
      int len = static_cast<int>(rs.path.size());
      if (opts.stop_at_target && static_cast<int>(best.size()) >= target_t + 1) break;
      // Full closure + reopening through an outside vertex.
      if (len >= 3 && core.has_edge(rs.path.back(), rs.path.front())) {
        consider(rs.path);
        // Reopen: find a cycle vertex with an off-cycle neighbour.
        int reopen_at = -1;
        for (int i = 0; i < len && reopen_at == -1; ++i)
          for (Vertex u : core.neighbors(rs.path[i]))
            if (rs.pos[u] == -1) { reopen_at = i; break; }
        if (reopen_at == -1) break;  // cycle saturates its component
        // New path starts right after the break point and ends at it.
        std::rotate(rs.path.begin(), rs.path.begin() + reopen_at + 1, rs.path.end());
        for (int i = 0; i < len; ++i) rs.pos[rs.path[i]] = i;
        tabu.clear();
        back_done = front_done = false;
        continue;
      }
      // Rotate the back endpoint toward an unseen endpoint (random pivot).
      int pivot = -1;
      uint64_t seen = 0;
      for (Vertex u : core.neighbors(rs.path.back())) {
        int i = rs.pos[u];
        if (i == -1 || i > len - 3) continue;
        if (tabu.count(rs.path[i + 1])) continue;
        if (rng() % ++seen == 0) pivot = i;
      }
      if (pivot == -1) {
        // Back endpoint exhausted; try rotating the front once via reversal.
        rs.reverse_path();
        int fpivot = -1;
        seen = 0;
        for (Vertex u : core.neighbors(rs.path.back())) {
          int i = rs.pos[u];
          if (i == -1 || i > len - 3) continue;
          if (tabu.count(rs.path[i + 1])) continue;
          if (rng() % ++seen == 0) fpivot = i;
        }
        if (fpivot == -1) break;
        tabu.insert(rs.path.back());
        rs.rotate(fpivot);
        back_done = false;
        continue;
      }
      tabu.insert(rs.path.back());
      rs.rotate(pivot);
      back_done = false;
    }
    consider(rs.best_closure());
  }

  if (best.size() < 3) {
    out.note = "no cycle found by rotation search";
    return out;
  }
  for (Vertex& v : best) v = back[v];
  CycleResult r;
  r.vertices = std::move(best);
  r.method = CycleMethod::posa_rotation;
  if (!is_valid_cycle(g, r.vertices))
    throw std::logic_error("posa_rotation_cycle: produced invalid cycle");
  out.cycle = std::move(r);
  out.meets_target = out.cycle->length() >= target_t + 1;
  return out;
}

bool check_posa_hypothesis(const Graph& g, int k, double t) {
  int n = g.vertex_count();
  if (n > 26) throw std::invalid_argument("check_posa_hypothesis: n <= 26 required");
  if (k < 1 || k > n) throw std::invalid_argument("check_posa_hypothesis: bad k");
  std::vector<uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  int lo = (k + 1) / 2;
  uint32_t limit = (n >= 31) ? 0x7FFFFFFFu : (1u << n);
  for (int s = lo; s <= k; ++s) {
    if (s > n) break;
    uint32_t mask = (1u << s) - 1;
    while (mask < limit) {
      uint32_t nb = 0, rest = mask;
      while (rest) {
        int v = __builtin_ctz(rest);
        rest &= rest - 1;
        nb |= adj[v];
      }
      nb &= ~mask;
      if (__builtin_popcount(nb) < t - 1e-12) return false;
      uint32_t c = mask & -mask;
      uint32_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
      if (mask >= limit) break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Crux -> expander -> rotation pipeline
// ---------------------------------------------------------------------------

PipelineResult cycle_via_crux_pipeline(const Graph& g, const Rational& alpha,
                                       const PipelineOptions& opts) {
  if (g.vertex_count() == 0) throw std::invalid_argument("pipeline: empty graph");
  double alpha_d = alpha.to_double();
  double eps = opts.epsilon > 0 ? opts.epsilon : (1.0 - alpha_d) / 500.0;

  CruxCertificate cert = g.vertex_count() <= 24 ? crux_exact(g, alpha)
                                                : crux_upper_heuristic(g, alpha);
  long long nc = cert.upper_bound;

  ExtractionParams xp;
  xp.epsilon = eps;
  xp.C = opts.C;
  xp.t = static_cast<double>(nc) / 2.0;
  xp.seed = opts.seed;

  PipelineResult out;
  out.expander = extract_expander(g, xp);

  std::vector<Vertex> back_map;
  Graph h = InducedSubgraphView(g, out.expander.subgraph).materialize(&back_map);

  int target = std::max(2, static_cast<int>(std::ceil(eps / 32.0 * nc - 1e-12)));
  out.bounds.posa_t = target;
  out.bounds.crux_estimate = nc;
  out.bounds.crux_bound = (1.0 - alpha_d) / 16000.0 * nc;
  out.bounds.expander_bound_a = eps / 32.0 * nc;
  double n = g.vertex_count();
  double ln_n = std::log(std::max(2.0, n));
  out.bounds.expander_bound_b = eps * n / (1200.0 * ln_n * ln_n);
  out.bounds.host_ratio = static_cast<double>(h.vertex_count()) / std::max<long long>(1, nc);

  CycleSearchResult inner = posa_rotation_cycle(h, target);
  if (inner.cycle) {
    CycleResult mapped;
    mapped.method = CycleMethod::pipeline;
    mapped.bound_claimed = out.bounds.crux_bound;
    for (Vertex v : inner.cycle->vertices) mapped.vertices.push_back(back_map[v]);
    if (!is_valid_cycle(g, mapped.vertices))
      throw std::logic_error("pipeline: mapped cycle invalid in host");
    out.search.cycle = std::move(mapped);
    out.search.meets_target = inner.meets_target;
  } else {
    out.search.note = inner.note;
  }
  out.search.hypothesis_met =
      out.expander.verification.status != ExpanderVerification::Status::failed;
  return out;
}

// ---------------------------------------------------------------------------
// DFS stack cycle (deep-path splice or snapshot-prefix reconnection)
// ---------------------------------------------------------------------------

namespace {

// Multi-source BFS in g avoiding `forbidden`, stopping at the first vertex of
// `target`.  Returns the path source..target_hit (empty when unreachable).
std::vector<Vertex> bfs_avoiding(const Graph& g, const std::vector<Vertex>& sources,
                                 const std::vector<char>& forbidden,
                                 const std::vector<char>& target) {
  int n = g.vertex_count();
  std::vector<int> parent(n, -2);
  std::deque<Vertex> queue;
  Vertex hit = -1;
  for (Vertex s : sources) {
    if (forbidden[s] || parent[s] != -2) continue;
    parent[s] = -1;
    if (target[s]) { hit = s; break; }
    queue.push_back(s);
  }
  while (hit == -1 && !queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex u : g.neighbors(v)) {
      if (parent[u] != -2 || forbidden[u]) continue;
      parent[u] = v;
      if (target[u]) { hit = u; break; }
      queue.push_back(u);
    }
  }
  if (hit == -1) return {};
  std::vector<Vertex> path;
  for (Vertex v = hit; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

CycleSearchResult dfs_stack_cycle(const Graph& g, double epsilon, double t,
                                  const DfsStackOptions& opts) {
  if (epsilon <= 0 || t <= 0)
    throw std::invalid_argument("dfs_stack_cycle: epsilon and t must be positive");
  CycleSearchResult out;
  int n = g.vertex_count();
  double ln_n = n >= 3 ? std::log(static_cast<double>(n)) : 1.0;
  double raw_bound = epsilon * n / (1200.0 * ln_n * ln_n);
  out.hypothesis_met = opts.assume_expander && n >= 150.0 * t - 1e-9 &&
                       epsilon <= 1.0 / 500.0 + 1e-12;
  if (n < 3 || g.edge_count() == 0) {
    out.note = "no cycle: graph too small or edgeless";
    return out;
  }

  const int s_mid = std::max(1, static_cast<int>(std::floor(raw_bound)));
  const int trigger = std::max({3, n / 100, s_mid + 2});
  const int x_target = n / 3;

  // --- single DFS pass with bookkeeping ---------------------------------
  std::vector<int> parent(n, -1), depth(n, 0), state(n, 0);  // 0=U,1=S,2=X
  std::vector<int> cursor(n, 0);
  std::vector<Vertex> stack, pop_log;
  Vertex deepest = -1;
  int deepest_depth = -1;

  struct Snapshot { Vertex endpoint; long long clock; int depth; };
  std::vector<Snapshot> snaps;
  bool window_active = false, window_done = false;
  long long clock = 0;
  int min_depth = 0;           // min |S| during the window (vertices)
  long long min_clock = -1;    // first moment the minimum was attained
  size_t min_pop_count = 0;    // |X| at that moment
  std::vector<Vertex> prefix;  // P = bottom min_depth stack entries

  auto window_observe = [&]() {
    int d = static_cast<int>(stack.size());
    if (d < min_depth) {
      min_depth = d;
      min_clock = clock;
      min_pop_count = pop_log.size();
    }
  };

  for (Vertex root = 0; root < n; ++root) {
    if (state[root] != 0) continue;
    stack.assign(1, root);
    state[root] = 1;
    depth[root] = 0;
    if (deepest_depth < 0) { deepest = root; deepest_depth = 0; }
    while (!stack.empty()) {
      Vertex v = stack.back();
      auto nb = g.neighbors(v);
      bool advanced = false;
      while (cursor[v] < static_cast<int>(nb.size())) {
        Vertex u = nb[cursor[v]++];
        if (state[u] != 0) continue;
        parent[u] = v;
        depth[u] = depth[v] + 1;
        state[u] = 1;
        stack.push_back(u);
        ++clock;
        if (depth[u] > deepest_depth) { deepest = u; deepest_depth = depth[u]; }
        if (window_active && !window_done) {
          window_observe();
          snaps.push_back({u, clock, static_cast<int>(stack.size())});
          if (static_cast<int>(snaps.size()) >= std::max(1, x_target)) {
            window_done = true;
            prefix.assign(stack.begin(), stack.begin() + min_depth);
          }
        }
        advanced = true;
        break;
      }
      if (advanced) continue;
      // pop v
      stack.pop_back();
      state[v] = 2;
      pop_log.push_back(v);
      ++clock;
      if (!window_active && static_cast<int>(pop_log.size()) >= std::max(1, x_target)) {
        window_active = true;
        min_depth = static_cast<int>(stack.size());
        min_clock = clock;
        min_pop_count = pop_log.size();
        if (!stack.empty())
          snaps.push_back({stack.back(), clock, static_cast<int>(stack.size())});
      } else if (window_active && !window_done) {
        window_observe();
      }
    }
  }

  // --- case (a): a deep stack path existed -------------------------------
  if (deepest_depth + 1 >= trigger) {
    std::vector<Vertex> path;
    for (Vertex v = deepest; v != -1; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    int len = static_cast<int>(path.size());
    int mid_start = (len - s_mid) / 2;
    std::vector<char> forbidden(n, 0), target(n, 0);
    std::vector<int> path_pos(n, -1);
    for (int i = 0; i < len; ++i) path_pos[path[i]] = i;
    for (int i = mid_start; i < mid_start + s_mid; ++i) forbidden[path[i]] = 1;
    std::vector<Vertex> sources(path.begin(), path.begin() + mid_start);
    for (int i = mid_start + s_mid; i < len; ++i) target[path[i]] = 1;
    // Also allow the connector to *start* anywhere in A but trim later; BFS
    // treats A as sources and stops at the first B vertex.
    std::vector<Vertex> q = bfs_avoiding(g, sources, forbidden, target);
    if (!q.empty()) {
      // Trim: last A-vertex, then first B-vertex after it.
      int ia = 0;
      for (int i = 0; i < static_cast<int>(q.size()); ++i)
        if (path_pos[q[i]] != -1 && path_pos[q[i]] < mid_start) ia = i;
      int ib = -1;
      for (int i = ia + 1; i < static_cast<int>(q.size()); ++i)
        if (path_pos[q[i]] != -1 && path_pos[q[i]] >= mid_start + s_mid) { ib = i; break; }
      if (ib != -1) {
        int pa = path_pos[q[ia]], pb = path_pos[q[ib]];
        std::vector<Vertex> cycle(path.begin() + pa, path.begin() + pb + 1);
        for (int i = ib - 1; i > ia; --i) cycle.push_back(q[i]);
        if (is_valid_cycle(g, cycle)) {
          CycleResult r;
          r.vertices = std::move(cycle);
          r.method = CycleMethod::dfs_stack;
          if (out.hypothesis_met) r.bound_claimed = std::max(1.0, std::ceil(raw_bound));
          out.cycle = std::move(r);
          out.note = "case (a): deep path spliced through its middle segment";
          return out;
        }
      }
    }
    out.note = "case (a) reconnection failed";
    // fall through to case (b) bookkeeping as a best effort
  }

  // --- case (b): snapshot window machinery --------------------------------
  if (snaps.empty() || min_clock < 0 || min_depth <= s_mid ||
      static_cast<int>(prefix.size()) < min_depth) {
    if (out.note.empty()) out.note = "no cycle: snapshot prefix too shallow";
    return out;
  }
  std::vector<char> in_prefix(n, 0);
  for (Vertex v : prefix) in_prefix[v] = 1;
  std::vector<char> in_xmin(n, 0);
  for (size_t i = 0; i < min_pop_count; ++i) in_xmin[pop_log[i]] = 1;

  long long before = 0, after = 0;
  for (const auto& s : snaps) (s.clock <= min_clock ? before : after) += 1;
  bool use_before = before >= after;  // ties break toward the explored side

  std::vector<Vertex> y;
  std::set<Vertex> y_seen;
  for (const auto& s : snaps) {
    bool side_ok = use_before ? (s.clock <= min_clock && in_xmin[s.endpoint])
                              : (s.clock > min_clock && !in_xmin[s.endpoint] &&
                                 !in_prefix[s.endpoint]);
    if (side_ok && s.depth > min_depth && !y_seen.count(s.endpoint)) {
      y_seen.insert(s.endpoint);
      y.push_back(s.endpoint);
    }
  }
  if (y.empty()) {
    if (out.note.empty()) out.note = "no cycle: no usable snapshot endpoints";
    return out;
  }

  // Z = opposite side ∪ (P \ P'); the cut structure forces the first hit
  // into P \ P'.  P' is the top s_mid entries of the prefix.
  std::vector<char> forbidden(n, 0), target(n, 0);
  int p_len = static_cast<int>(prefix.size());
  for (int i = p_len - s_mid; i < p_len; ++i) forbidden[prefix[i]] = 1;
  for (int i = 0; i < p_len - s_mid; ++i) target[prefix[i]] = 1;
  for (int v = 0; v < n; ++v) {
    if (in_prefix[v]) continue;
    bool opposite = use_before ? !in_xmin[v] : in_xmin[v];
    if (opposite) target[v] = 1;
  }
  std::vector<Vertex> r_path = bfs_avoiding(g, y, forbidden, target);
  if (r_path.empty()) {
    if (out.note.empty()) out.note = "no cycle: snapshot endpoints disconnected from prefix";
    return out;
  }
  Vertex z = r_path.back();
  if (!in_prefix[z] || forbidden[z]) {
    if (out.note.empty()) out.note = "no cycle: connector bypassed the stack prefix";
    return out;
  }
  Vertex y_used = r_path.front();
  // Suffix chain: y_used up to u = prefix.back() through tree parents.
  std::vector<Vertex> sfx_down;  // y_used ... (child of u)
  {
    Vertex v = y_used;
    Vertex u = prefix.back();
    while (v != -1 && v != u) { sfx_down.push_back(v); v = parent[v]; }
    if (v != u) {
      out.note = "no cycle: snapshot endpoint lost its prefix ancestry";
      return out;
    }
  }
  // sfx: s_0 = u, s_1, ..., s_M = y_used
  std::vector<Vertex> sfx(sfx_down.rbegin(), sfx_down.rend());
  sfx.insert(sfx.begin(), prefix.back());
  std::vector<int> sfx_index(n, -1);
  for (int i = 0; i < static_cast<int>(sfx.size()); ++i) sfx_index[sfx[i]] = i;

  // r: r_0 = z, ..., r_L = y_used
  std::vector<Vertex> r(r_path.rbegin(), r_path.rend());
  int j = -1, m = -1;
  for (int i = 1; i < static_cast<int>(r.size()); ++i)
    if (sfx_index[r[i]] > 0) { j = i; m = sfx_index[r[i]]; break; }
  if (j == -1) {
    out.note = "no cycle: connector never rejoined the snapshot suffix";
    return out;
  }

  int iz = -1;
  for (int i = 0; i < p_len; ++i)
    if (prefix[i] == z) { iz = i; break; }
  std::vector<Vertex> cycle(prefix.begin() + iz, prefix.end());  // z .. u
  for (int i = 1; i <= m; ++i) cycle.push_back(sfx[i]);          // u -> s_m
  for (int i = j - 1; i >= 1; --i) cycle.push_back(r[i]);        // back toward z
  if (!is_valid_cycle(g, cycle)) {
    out.note = "no cycle: spliced walk failed validation";
    return out;
  }
  CycleResult res;
  res.vertices = std::move(cycle);
  res.method = CycleMethod::dfs_stack;
  if (out.hypothesis_met) res.bound_claimed = std::max(1.0, std::ceil(raw_bound));
  out.cycle = std::move(res);
  out.note = "case (b): snapshot prefix reconnected below its top segment";
  return out;
}

// ---------------------------------------------------------------------------
// Chord splicing along vertical paths
// ---------------------------------------------------------------------------

namespace {

struct PathChord {
  int lo = 0, hi = 0;   // coordinates: leaf = 0, ascending toward the root
  Vertex lo_v = -1, hi_v = -1;
};

// Exact optimum over chains c_0..c_C with
//   lo_0 < lo_1 < hi_0,   hi_{i+1} > hi_i,   hi_i < lo_{i+2} < hi_{i+1};
// total cycle length = sum over sections
//   [lo_0..lo_1], [hi_i..lo_{i+2}] (i <= C-2), [hi_{C-1}..hi_C]
// which equals  sum_j (lo_j - hi_j + 1) - 2 lo_0 + 2 hi_C.
// Returns the chain (as chords c_0..c_C in order) and its length.
std::pair<std::vector<PathChord>, long long> best_chain(std::vector<PathChord> chords) {
  // Keep the quadratic tables bounded: on enormous chord sets retain the
  // widest spans (deterministic tie-breaks); the result stays a valid cycle,
  // merely without an optimality promise in that regime.
  constexpr int kMaxChords = 1200;
  if (static_cast<int>(chords.size()) > kMaxChords) {
    std::sort(chords.begin(), chords.end(), [](const PathChord& a, const PathChord& b) {
      int sa = a.hi - a.lo, sb = b.hi - b.lo;
      if (sa != sb) return sa > sb;
      if (a.lo != b.lo) return a.lo < b.lo;
      return a.hi < b.hi;
    });
    chords.resize(kMaxChords);
  }
  int k = static_cast<int>(chords.size());
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (chords[a].hi != chords[b].hi) return chords[a].hi < chords[b].hi;
    return chords[a].lo < chords[b].lo;
  });
  auto W = [&](int i) {
    return static_cast<long long>(chords[i].lo) - chords[i].hi + 1;
  };

  long long best_len = 0;
  std::vector<PathChord> best_chain_out;
  // Singles.
  for (int i = 0; i < k; ++i) {
    long long len = static_cast<long long>(chords[i].hi) - chords[i].lo + 1;
    if (len >= 3 && len > best_len) {
      best_len = len;
      best_chain_out = {chords[i]};
    }
  }

  // dp over ordered pairs in hi-ascending order.
  // dp[a][b]: best (sum W - 2 lo_first) for a chain ending ... a, b.
  std::vector<std::vector<long long>> dp(k, std::vector<long long>(k, LLONG_MIN));
  std::vector<std::vector<int>> from(k, std::vector<int>(k, -2));  // -2 unused, -1 base
  for (int ai = 0; ai < k; ++ai) {
    int a = idx[ai];
    for (int bi = ai + 1; bi < k; ++bi) {
      int b = idx[bi];
      if (chords[b].hi <= chords[a].hi) continue;
      // base: a is c_0, b is c_1: need lo_a < lo_b < hi_a.
      if (chords[a].lo < chords[b].lo && chords[b].lo < chords[a].hi) {
        long long v = W(a) + W(b) - 2LL * chords[a].lo;
        if (v > dp[a][b]) { dp[a][b] = v; from[a][b] = -1; }
      }
    }
  }
  // Prefix maxima over predecessors a (in hi-ascending idx order) let each
  // (b, c) transition query "best dp[a][b] with hi_a < lo_c" in O(log k).
  std::vector<int> pre_hi(k);
  std::vector<long long> pre_best(k);
  std::vector<int> pre_arg(k);
  for (int bi = 0; bi < k; ++bi) {
    int b = idx[bi];
    long long run_best = LLONG_MIN;
    int run_arg = -2;
    for (int ai = 0; ai < bi; ++ai) {
      int a = idx[ai];
      if (dp[a][b] > run_best) { run_best = dp[a][b]; run_arg = a; }
      pre_hi[ai] = chords[a].hi;
      pre_best[ai] = run_best;
      pre_arg[ai] = run_arg;
    }
    for (int ci = bi + 1; ci < k; ++ci) {
      int c = idx[ci];
      if (chords[c].hi <= chords[b].hi) continue;
      if (!(chords[c].lo < chords[b].hi)) continue;
      // extend chains ending (a, b) with hi_a < lo_c.
      int t = static_cast<int>(
          std::lower_bound(pre_hi.begin(), pre_hi.begin() + bi, chords[c].lo) -
          pre_hi.begin());
      if (t == 0) continue;
      if (pre_best[t - 1] == LLONG_MIN) continue;
      long long v = pre_best[t - 1] + W(c);
      if (v > dp[b][c]) { dp[b][c] = v; from[b][c] = pre_arg[t - 1]; }
    }
  }
  for (int ai = 0; ai < k; ++ai)
    for (int bi = 0; bi < k; ++bi) {
      int a = idx[ai], b = idx[bi];
      if (dp[a][b] == LLONG_MIN) continue;
      long long len = dp[a][b] + 2LL * chords[b].hi;
      if (len >= 3 && len > best_len) {
        best_len = len;
        std::vector<int> chain;
        int x = a, y = b;
        chain.push_back(y);
        while (true) {
          chain.push_back(x);
          int p = from[x][y];
          if (p == -1) break;
          y = x;
          x = p;
        }
        std::reverse(chain.begin(), chain.end());
        best_chain_out.clear();
        for (int i : chain) best_chain_out.push_back(chords[i]);
      }
    }
  return {best_chain_out, best_len};
}

}  // namespace

CycleSearchResult chord_splice_cycle(const DfsForest& forest,
                                     const std::vector<Edge>& chords, const Graph& g,
                                     const ChordSpliceOptions& opts) {
  CycleSearchResult out;
  int n = g.vertex_count();
  if (static_cast<int>(forest.parent.size()) != n)
    throw std::invalid_argument("chord_splice_cycle: forest/graph size mismatch");
  DfsForest local;
  const DfsForest* f = &forest;
  if (forest.tin.empty()) {
    local = forest;
    build_euler_intervals(local, g);
    f = &local;
  }
  // Validate chords: ancestor-descendant pairs; store (ancestor, descendant).
  std::vector<std::pair<Vertex, Vertex>> ad;
  std::set<std::pair<Vertex, Vertex>> dedupe;
  for (const Edge& e : chords) {
    Vertex anc, desc;
    if (f->is_ancestor(e.u, e.v)) { anc = e.u; desc = e.v; }
    else if (f->is_ancestor(e.v, e.u)) { anc = e.v; desc = e.u; }
    else
      throw std::invalid_argument("chord_splice_cycle: chord (" + std::to_string(e.u) +
                                  "," + std::to_string(e.v) +
                                  ") does not join an ancestor-descendant pair");
    if (anc == desc) continue;
    if (dedupe.insert({anc, desc}).second) ad.push_back({anc, desc});
  }

  // Leaves (no children), deepest first.
  std::vector<char> has_child(n, 0);
  for (int v = 0; v < n; ++v)
    if (f->parent[v] != -1) has_child[f->parent[v]] = 1;
  std::vector<Vertex> leaves;
  for (int v = 0; v < n; ++v)
    if (!has_child[v]) leaves.push_back(v);
  std::sort(leaves.begin(), leaves.end(), [&](Vertex a, Vertex b) {
    if (f->depth[a] != f->depth[b]) return f->depth[a] > f->depth[b];
    return a < b;
  });
  if (opts.max_leaves > 0 && static_cast<int>(leaves.size()) > opts.max_leaves)
    leaves.resize(opts.max_leaves);

  std::vector<Vertex> best_cycle;
  for (Vertex leaf : leaves) {
    // Vertical path root..leaf.
    std::vector<Vertex> path;
    for (Vertex v = leaf; v != -1; v = f->parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    int len = static_cast<int>(path.size());
    // Coordinate: leaf = 0 ascending toward the root.
    auto coord = [&](Vertex v) { return (len - 1) - f->depth[v]; };
    std::vector<PathChord> pcs;
    for (auto& [anc, desc] : ad) {
      if (!f->is_ancestor(desc, leaf)) continue;  // then anc is too
      PathChord pc;
      pc.lo = coord(desc);
      pc.hi = coord(anc);
      pc.lo_v = desc;
      pc.hi_v = anc;
      pcs.push_back(pc);
    }
    if (pcs.empty()) continue;
    auto [chain, length] = best_chain(pcs);
    if (chain.empty() || length <= static_cast<long long>(best_cycle.size())) continue;

    // Materialize the cycle.  path index of coordinate c is (len-1) - c.
    auto vertex_at = [&](int c) { return path[(len - 1) - c]; };
    std::vector<Vertex> cyc;
    auto traverse = [&](int from_c, int to_c) {
      // append (from_c, to_c] walking one step at a time (either direction)
      int step = to_c > from_c ? 1 : -1;
      for (int c = from_c + step; c != to_c + step; c += step) cyc.push_back(vertex_at(c));
    };
    int C = static_cast<int>(chain.size()) - 1;
    if (C == 0) {
      const PathChord& pc = chain[0];
      cyc.push_back(vertex_at(pc.lo));
      traverse(pc.lo, pc.hi);
    } else {
      cyc.push_back(vertex_at(chain[0].lo));
      traverse(chain[0].lo, chain[1].lo);  // section [lo_0..lo_1]
      cyc.push_back(vertex_at(chain[1].hi));  // chord 1
      int jch = 1;
      while (jch + 2 <= C) {
        traverse(chain[jch].hi, chain[jch + 2].lo);  // [hi_j..lo_{j+2}]
        cyc.push_back(vertex_at(chain[jch + 2].hi));  // chord j+2
        jch += 2;
      }
      if (jch == C - 1) {
        traverse(chain[C - 1].hi, chain[C].hi);  // top section upward
        cyc.push_back(vertex_at(chain[C].lo));   // chord C
        jch = C;
      } else {  // jch == C
        traverse(chain[C].hi, chain[C - 1].hi);  // top section downward
        if (C - 1 != 0)                          // chord C-1 (C-1 == 0 closes)
          cyc.push_back(vertex_at(chain[C - 1].lo));
        jch = C - 1;
      }
      while (jch - 2 >= 0) {
        traverse(chain[jch].lo, chain[jch - 2].hi);  // [hi_{j-2}..lo_j] downward
        if (jch - 2 == 0) {
          // chord 0 returns to the start; do not append.
        } else {
          cyc.push_back(vertex_at(chain[jch - 2].lo));  // chord j-2
        }
        jch -= 2;
      }
    }
    if (static_cast<long long>(cyc.size()) != length)
      throw std::logic_error("chord_splice_cycle: assembled length mismatch");
    if (!is_valid_cycle(g, cyc))
      throw std::logic_error("chord_splice_cycle: assembled cycle invalid");
    if (cyc.size() > best_cycle.size()) best_cycle = std::move(cyc);
  }

  if (best_cycle.size() < 3) {
    out.note = "no spliced cycle: no usable chord chain";
    return out;
  }
  CycleResult r;
  r.vertices = std::move(best_cycle);
  r.method = CycleMethod::chord_splice;
  out.cycle = std::move(r);
  return out;
}

}  // namespace cruxkit
